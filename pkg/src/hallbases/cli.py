"""Command-line front end emitting deterministic JSON reports.

Subcommands: roots, verify, basis, comp-basis, cyclic-canonical, hall-poly.
Every report carries schema: 1; Laurent polynomials are serialized in the
canonical ``c*v^e + ...`` text form; exit status is 0 exactly when every
checked identity passed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import laurent
from .cartan import admissible_of, builtin_quiver, cartan_of, is_affine, parse_quiver
from .cyclic import (
    CyclicCanonicalBasis,
    Multisegment,
    cyclic_generic_algebra,
    cyclic_shape,
    diamond_step,
    eta_fold,
    multisegments_of_dim,
    parse_multisegment,
    word_of,
)
from .hall import GenericHallAlgebra, HallContext
from .kashiwara import AdmissibleTriple, check_lattice_stability, verify_sink_identity
from .laurent import RationalV
from .modrep import IsoClassCatalog, field, synth_a1, synth_kronecker
from .pbwbasis import CONTEXT_CAPS, get_context


class RunConfig:
    """Resolved command-line configuration."""

    def __init__(self, args):
        self.ctx = getattr(args, "ctx", None)
        self.quiver_file = getattr(args, "quiver", None)
        self.cap = _parse_ints(getattr(args, "cap", None))
        self.primes = _parse_ints(getattr(args, "primes", None)) or (2, 3, 4, 5)
        self.verify_prime = getattr(args, "verify_prime", None) or 7
        self.order = getattr(args, "order", None)
        self.cache_dir = getattr(args, "cache_dir", None)
        self.out = getattr(args, "out", None)
        self.threads = getattr(args, "threads", 1)
        if self.order:
            laurent.DEFAULT_SERIES_ORDER = self.order

    def shape(self):
        if self.quiver_file:
            with open(self.quiver_file) as fh:
                return parse_quiver(fh.read())
        if self.ctx and self.ctx.startswith("cyclic:"):
            return cyclic_shape(int(self.ctx.split(":")[1]))
        if self.ctx:
            return builtin_quiver(self.ctx)
        raise SystemExit("either --ctx or --quiver is required")


def _parse_ints(text):
    if not text:
        return None
    return tuple(int(x) for x in str(text).split(","))


def emit(config, payload, failed=False):
    payload = dict(payload)
    payload["schema"] = 1
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 2 if failed else 0


def _serre_dims(shape):
    datum = cartan_of(shape)
    dims = []
    for i in shape.vertices:
        for j in shape.vertices:
            if i == j:
                continue
            n = 1 - datum.C[datum.pos[i]][datum.pos[j]]
            d = [0] * len(shape.vertices)
            d[shape.index[i]] = n
            d[shape.index[j]] = 1
            dims.append(tuple(d))
    return dims


def _field_of(q):
    for p in (2, 3, 5, 7):
        d = 0
        x = q
        while x % p == 0:
            x //= p
            d += 1
        if x == 1 and d:
            return field(p, d)
    raise SystemExit("q = %d is not a small prime power" % q)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def cmd_roots(config, window):
    shape = config.shape()
    if getattr(shape, "nilpotent", False):
        raise SystemExit("the roots command needs an acyclic valued quiver")
    seq = admissible_of(shape)
    datum = cartan_of(shape)
    affine = is_affine(datum)
    catalog = None
    rows = []
    failed = False
    betas = {}
    # walk each ray outwards and stop at the first invalid position: beyond
    # it the periodic word is no longer reduced, whatever beta it produces
    for direction in (0, 1):
        t = direction
        while abs(t) <= window:
            try:
                betas[t] = seq.beta(t)
            except ValueError:
                break
            t += 1 if direction else -1
    if affine:
        synth = synth_kronecker if config.ctx == "kronecker" else None
        try:
            catalog = IsoClassCatalog(shape, field(2), sorted(betas.values()),
                                      synthesizer=synth, budget=30,
                                      cache_dir=config.cache_dir)
        except Exception as exc:  # resource refusal is reported, not hidden
            rows.append({"warning": "no catalog: %s" % exc})
    for t, b in sorted(betas.items()):
        row = {"t": t, "beta": list(b), "vertex": str(seq.vertex(t))}
        if catalog is not None:
            indecs = [c for c in catalog.classes_of_dim(b) if c.indec]
            row["indecomposables"] = len(indecs)
            if len(indecs) != 1:
                failed = True
            else:
                row["defect"] = catalog.defect_class(indecs[0].cid)
                want = "preprojective" if t <= 0 else "preinjective"
                if row["defect"] != want:
                    failed = True
        rows.append(row)
    return emit(config, {"command": "roots", "affine": affine,
                         "window": window, "table": rows}, failed)


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def _suite_serre(config):
    shape = config.shape()
    dims = _serre_dims(shape)
    synth = synth_kronecker if config.ctx == "kronecker" else None
    results = []
    ok = True
    for q in (2, 3):
        cat = IsoClassCatalog(shape, field(q), dims, synthesizer=synth,
                              budget=30, cache_dir=config.cache_dir)
        hc = HallContext(cat)
        for i in shape.vertices:
            for j in shape.vertices:
                if i == j:
                    continue
                passed = hc.serre_sum(i, j).vanishes_at_field()
                ok = ok and passed
                results.append({"q": q, "i": str(i), "j": str(j), "pass": passed})
    return {"suite": "serre", "pass": ok, "checks": results}, not ok


def _suite_orthogonality(config):
    ctx = get_context(config.ctx, cache_dir=config.cache_dir)
    cap = config.cap or ctx.cap
    results = []
    ok = True
    for nu in itertools.product(*(range(c + 1) for c in cap)):
        fails = ctx.verify_almost_orthogonal(nu)
        results.append({"grading": list(nu), "pairs_failed": len(fails)})
        ok = ok and not fails
    return {"suite": "orthogonality", "pass": ok, "slices": results}, not ok


def _suite_triangularity(config):
    ctx = get_context(config.ctx, cache_dir=config.cache_dir)
    cap = config.cap or ctx.cap
    results = []
    ok = True
    for nu in itertools.product(*(range(c + 1) for c in cap)):
        data = ctx.basis_of_grading(nu)
        bar_ok = ctx.check_bar_involution(nu)
        c_ok = all(ctx.check_C_bar_invariant(nu, a) for a in data["aperiodic"])
        ok = ok and bar_ok and c_ok
        results.append({"grading": list(nu), "indices": len(data["indices"]),
                        "aperiodic": len(data["aperiodic"]),
                        "bar_involution": bar_ok, "C_bar_invariant": c_ok})
    return {"suite": "triangularity", "pass": ok, "slices": results}, not ok


def _eta_pairs(rank, bound):
    apers = []
    for total in range(bound + 1):
        for dims in itertools.product(range(total + 1), repeat=rank):
            if sum(dims) == total:
                for pi in multisegments_of_dim(rank, dims):
                    if pi.is_aperiodic():
                        apers.append(pi)
    for pi1 in apers:
        for pi2 in apers:
            if pi1.total_boxes() + pi2.total_boxes() <= bound:
                yield pi1, pi2


def _eta_check(pair):
    pi1, pi2 = pair
    arg = pi2
    for j, a in reversed(word_of(pi1)):
        for _ in range(a):
            arg = diamond_step(j, arg)
    lhs = eta_fold(arg)
    rhs = eta_fold(pi2)
    for j, a in reversed(word_of(eta_fold(pi1))):
        for _ in range(a):
            rhs = diamond_step(j, rhs)
    return lhs == rhs


def _suite_eta(config, rank, bound):
    pairs = list(_eta_pairs(rank, bound))
    if config.threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            outcomes = list(pool.map(_eta_check, pairs))
    else:
        outcomes = [_eta_check(p) for p in pairs]
    bad = [str(p) for p, good in zip(pairs, outcomes) if not good]
    ok = not bad
    return {"suite": "eta", "rank": rank, "bound": bound,
            "pairs_checked": len(pairs), "pass": ok, "counterexamples": bad}, not ok


def _suite_kashiwara(config):
    ctx = get_context(config.ctx, cache_dir=config.cache_dir)
    cap = config.cap or ctx.cap
    results = []
    ok = True
    for v in ctx.shape.vertices:
        tri = AdmissibleTriple(ctx, v)
        rel_ok = True
        for nu in itertools.product(*(range(c + 1) for c in cap)):
            target = tuple(a + b for a, b in zip(nu, tri.e_i))
            if all(t <= c for t, c in zip(target, cap)):
                rel_ok = rel_ok and tri.check_relation(nu)
        lat_fails = 0
        for nu in itertools.product(*(range(c + 1) for c in cap)):
            lat_fails += len(check_lattice_stability(tri, nu))
        ok = ok and rel_ok and lat_fails == 0
        results.append({"vertex": str(v), "relation": rel_ok,
                        "lattice_failures": lat_fails})
    sink_ok = True
    for nu in itertools.product(*(range(c + 1) for c in cap)):
        for a in ctx.indices_of_grading(nu):
            sink_ok = sink_ok and verify_sink_identity(ctx, a)
    ok = ok and sink_ok
    return {"suite": "kashiwara", "pass": ok, "vertices": results,
            "sink_identity": sink_ok}, not ok


def _suite_hallpoly(config):
    checks = []
    ok = True
    primes, verify = config.primes, config.verify_prime
    alg = cyclic_generic_algebra(2, (1, 1), fit_fields=primes, verify_field=verify,
                                 escalation=None, cache_dir=config.cache_dir)
    lab = alg.labeler
    hp = alg.fit_hall_polynomial(
        lab.of_multisegment(Multisegment.segment(2, 1, 2)),
        lab.of_multisegment(Multisegment.segment(2, 1, 1)),
        lab.of_multisegment(Multisegment.segment(2, 2, 1)),
        (1, 0), (0, 1), primes=primes, verify=verify)
    good = [str(c) for c in hp.coefficients()] == ["1"]
    ok = ok and good
    checks.append({"triple": "g^{[1;2)}_{S1,S2} (cyclic r=2)",
                   "poly": [str(c) for c in hp.coefficients()], "pass": good})
    a1 = builtin_quiver("a1")

    class A1Labeler:
        def label_of(self, catalog, cid):
            return ("A1", catalog.classes[cid].dims)

    catalogs = {q: IsoClassCatalog(a1, _field_of(q), [(2,)], synthesizer=synth_a1,
                                   budget=16, cache_dir=config.cache_dir)
                for q in sorted(set(primes) | {verify})}
    alg1 = GenericHallAlgebra(a1, catalogs, A1Labeler(), primes, verify)
    hp1 = alg1.fit_hall_polynomial(("A1", (2,)), ("A1", (1,)), ("A1", (1,)),
                                   (1,), (1,), primes=primes, verify=verify)
    good1 = [str(c) for c in hp1.coefficients()] == ["1", "1"]
    ok = ok and good1
    checks.append({"triple": "g^{S+S}_{S,S} (A1)",
                   "poly": [str(c) for c in hp1.coefficients()], "pass": good1})
    return {"suite": "hallpoly", "pass": ok, "checks": checks,
            "primes": list(primes), "verified_at": verify}, not ok


def cmd_verify(config, suite, rank, bound):
    suites = []
    if suite == "all":
        suites = ["serre", "eta", "hallpoly"]
        if config.ctx in CONTEXT_CAPS:
            suites += ["orthogonality", "triangularity", "kashiwara"]
    else:
        suites = [suite]
    reports = []
    failed = False
    for s in suites:
        if s == "serre":
            rep, bad = _suite_serre(config)
        elif s == "orthogonality":
            rep, bad = _suite_orthogonality(config)
        elif s == "triangularity":
            rep, bad = _suite_triangularity(config)
        elif s == "eta":
            rep, bad = _suite_eta(config, rank, bound)
        elif s == "kashiwara":
            rep, bad = _suite_kashiwara(config)
        elif s == "hallpoly":
            rep, bad = _suite_hallpoly(config)
        else:
            raise SystemExit("unknown suite %r" % s)
        reports.append(rep)
        failed = failed or bad
    return emit(config, {"command": "verify",
                         "pass": not failed, "suites": reports}, failed)


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------

def _index_str(a):
    return str(a)


def cmd_comp_basis(config, which):
    ctx = get_context(config.ctx, cache_dir=config.cache_dir)
    cap = config.cap or ctx.cap
    slices = {}
    failed = False
    for nu in itertools.product(*(range(c + 1) for c in cap)):
        data = ctx.basis_of_grading(nu)
        order = data["aperiodic"]
        entry = {}
        if which == "report":
            entry = {"indices": len(data["indices"]), "aperiodic": len(order),
                     "bar_involution": ctx.check_bar_involution(nu),
                     "C_bar_invariant": all(ctx.check_C_bar_invariant(nu, a)
                                            for a in order)}
            failed = failed or not entry["bar_involution"] or not entry["C_bar_invariant"]
        else:
            for a in order:
                if which == "N":
                    coords = {a: RationalV(1)}
                elif which == "E":
                    coords = data["E"][a]
                else:
                    coords = ctx.C_in_N(nu, a)
                entry[_index_str(a)] = [[_index_str(b), str(c)]
                                        for b, c in sorted(coords.items(),
                                                           key=lambda kv: _index_str(kv[0]))]
        slices["%s" % (list(nu),)] = entry
    return emit(config, {"command": "comp-basis", "ctx": config.ctx,
                         "emit": which, "cap": list(cap), "slices": slices}, failed)


def cmd_cyclic_canonical(config, rank, dim, emit_kind):
    cap = _parse_ints(dim) or (2, 2)
    basis = CyclicCanonicalBasis(rank, cap, cache_dir=config.cache_dir)
    out = {}
    failed = False
    for pi in sorted(basis.B, key=str):
        ang = basis.B_in_angle(pi)
        ok = basis.check_bar_invariant(pi)
        failed = failed or not ok
        out[str(pi)] = {
            "bar_invariant": ok,
            "coords": [[str(p), str(c)] for p, c in sorted(ang.items(), key=lambda kv: str(kv[0]))],
        }
    return emit(config, {"command": "cyclic-canonical", "rank": rank,
                         "dim": list(cap), "emit": emit_kind, "basis": out}, failed)


def cmd_hall_poly(config, triple_spec):
    primes, verify = config.primes, config.verify_prime
    if config.ctx and config.ctx.startswith("cyclic:"):
        r = int(config.ctx.split(":")[1])
        parts = [p.strip() for p in triple_spec.split("/")]
        if len(parts) != 3:
            raise SystemExit("--triple needs 'L / M / N' multisegment texts")
        pis = [parse_multisegment("r=%d; %s" % (r, p) if not p.startswith("r=") else p)
               for p in parts]
        dims = [pi.dim_vector() for pi in pis]
        cap = tuple(max(d[k] for d in dims) for k in range(r))
        alg = cyclic_generic_algebra(r, cap, fit_fields=primes, verify_field=verify,
                                     escalation=None, cache_dir=config.cache_dir)
        lab = alg.labeler
        hp = alg.fit_hall_polynomial(lab.of_multisegment(pis[0]),
                                     lab.of_multisegment(pis[1]),
                                     lab.of_multisegment(pis[2]),
                                     dims[1], dims[2], primes=primes, verify=verify)
    elif config.ctx == "a1":
        dims = [int(x) for x in triple_spec.split("/")]
        if len(dims) != 3 or dims[0] != dims[1] + dims[2]:
            raise SystemExit("--triple needs 'l / m / n' with l = m + n")
        a1 = builtin_quiver("a1")

        class A1Labeler:
            def label_of(self, catalog, cid):
                return ("A1", catalog.classes[cid].dims)

        catalogs = {q: IsoClassCatalog(a1, _field_of(q), [(dims[0],)],
                                       synthesizer=synth_a1, budget=16,
                                       cache_dir=config.cache_dir)
                    for q in sorted(set(primes) | {verify})}
        alg = GenericHallAlgebra(a1, catalogs, A1Labeler(), primes, verify)
        hp = alg.fit_hall_polynomial(("A1", (dims[0],)), ("A1", (dims[1],)),
                                     ("A1", (dims[2],)), (dims[1],), (dims[2],))
    else:
        raise SystemExit("hall-poly supports --ctx a1 or --ctx cyclic:<r>")
    return emit(config, {"command": "hall-poly",
                         "poly": [str(c) for c in hp.coefficients()],
                         "primes": list(primes), "verified_at": verify,
                         "verified": True})


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--ctx", help="built-in context name (kronecker, a2tilde, "
                                 "c2tilde-folded, cyclic:<r>, a1)")
    p.add_argument("--quiver", help="path to a quiver description file")
    p.add_argument("--cap", help="grading cap a,b[,c...]")
    p.add_argument("--primes", help="fit fields, e.g. 2,3,4,5")
    p.add_argument("--verify-prime", "--verify", dest="verify_prime", type=int,
                   help="held-out verification field")
    p.add_argument("--order", type=int, help="series truncation order")
    p.add_argument("--cache-dir", dest="cache_dir", help="catalog cache directory")
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--threads", type=int, default=1, help="worker cap")


def main(argv=None):
    parser = argparse.ArgumentParser(prog="hallbases",
                                     description="exact affine composition-algebra bases")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="real-root table with catalog matching")
    _add_common(p)
    p.add_argument("--window", type=int, default=3)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p)
    p.add_argument("--suite", required=True,
                   choices=["serre", "orthogonality", "triangularity", "eta",
                            "kashiwara", "hallpoly", "all"])
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--bound", type=int, default=5)

    p = sub.add_parser("basis", help="emit basis tables")
    _add_common(p)
    p.add_argument("which", choices=["comp", "cyclic"])
    p.add_argument("--emit", default="C", choices=["N", "E", "C", "report"])
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--dim", help="cyclic dimension vector, e.g. 2,2")

    p = sub.add_parser("comp-basis", help="composition-algebra basis tables")
    _add_common(p)
    p.add_argument("--emit", default="C", choices=["N", "E", "C", "report"])

    p = sub.add_parser("cyclic-canonical", help="cyclic-quiver canonical basis")
    _add_common(p)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--dim", help="dimension cap, e.g. 2,2")
    p.add_argument("--emit", default="B", choices=["B", "report"])

    p = sub.add_parser("hall-poly", help="fit and verify one Hall polynomial")
    _add_common(p)
    p.add_argument("--triple", required=True,
                   help="'L / M / N' multisegments (cyclic) or dims (a1)")

    args = parser.parse_args(argv)
    config = RunConfig(args)
    if args.command == "roots":
        return cmd_roots(config, args.window)
    if args.command == "verify":
        return cmd_verify(config, args.suite, args.rank, args.bound)
    if args.command == "basis":
        if args.which == "comp":
            return cmd_comp_basis(config, args.emit)
        return cmd_cyclic_canonical(config, args.rank, args.dim, args.emit)
    if args.command == "comp-basis":
        return cmd_comp_basis(config, args.emit)
    if args.command == "cyclic-canonical":
        return cmd_cyclic_canonical(config, args.rank, args.dim, args.emit)
    if args.command == "hall-poly":
        return cmd_hall_poly(config, args.triple)
    raise SystemExit("unknown command")


if __name__ == "__main__":
    sys.exit(main())
