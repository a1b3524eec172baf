"""Command-line front end: ``k3picard <group> <command> [options]``."""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .certify import (
    Certificate,
    SearchConfig,
    WeilSource,
    certify_degree6,
    certify_degree8,
    crt_interpolate_lift,
    lift_model,
    random_degree6_with_line,
    random_net,
    read_weil_file,
    verify_certificate,
)
from .errors import K3Error
from .ffield import make_field
from .geommodels import (
    Degree6Pair,
    DoubleCoverModel,
    ModelRecord,
    Provenance,
    QuadricNet,
    branch_sextic,
    decompose_containing_line,
    disc_sextic,
    dump_record,
    load_record,
    model_to_record,
    record_to_model,
)
from .groebner import lines_free_over_closure
from .linescan import lines_on_surface_scan, scan_report, tritangent_scan
from .zeta import (
    DEFAULT_P2_BUDGET,
    PointCounts,
    WeilPolynomial,
    count_double_cover,
    count_series,
    cyclotomic_rank_bound,
    load_counts_cache,
    reconstruct_weil,
    validate_weil,
)

GROUP_HELP = {
    "deg6": "sextic K3 surfaces in P^4 containing a line",
    "deg8": "octic K3 surfaces (nets of quadrics in P^5)",
    "zeta": "point counts and Weil polynomials",
    "rank": "rank bounds",
    "lines": "lines on degree-6 surfaces",
    "tritangent": "split tritangents of branch sextics",
}

EXAMPLES = ("deg6-q", "deg6-f47", "deg8-q", "deg8-f47", "deg8-sextic-f47", "deg6-sextic-f47")


# --- model files ----------------------------------------------------------------

def model_record(model) -> ModelRecord:
    if isinstance(model, Degree6Pair):
        return ModelRecord("degree6-pair", model.ring, polys={"f2": model.f2, "f3": model.f3})
    if isinstance(model, QuadricNet):
        return ModelRecord("quadric-net", model.ring, polys={"q%d" % (i + 1): q for i, q in enumerate(model.quadrics)})
    if isinstance(model, DoubleCoverModel):
        return model_to_record(model)
    raise TypeError(type(model).__name__)


def record_model(rec: ModelRecord):
    if rec.kind == "degree6-pair":
        return Degree6Pair(rec.polys["f2"], rec.polys["f3"])
    if rec.kind == "quadric-net":
        return QuadricNet(tuple(rec.polys["q%d" % i] for i in (1, 2, 3)))
    return record_to_model(rec)


def example_model(name: str):
    F = make_field(catalog.EXAMPLE_PRIME)
    if name == "deg6-q":
        return Degree6Pair(*catalog.pair_q())
    if name == "deg6-f47":
        return Degree6Pair(*catalog.pair_q()).reduce(F)
    if name == "deg8-q":
        return QuadricNet(tuple(catalog.net_q()))
    if name == "deg8-f47":
        return QuadricNet(tuple(catalog.net_f47()))
    if name == "deg8-sextic-f47":
        return DoubleCoverModel(catalog.deg8_sextic())
    if name == "deg6-sextic-f47":
        return DoubleCoverModel(catalog.deg6_sextic(), 1, Provenance.PROJECTION_FROM_LINE)
    raise K3Error("unknown example %r" % name)


def load_model(args):
    if getattr(args, "example", None):
        return example_model(args.example)
    if not getattr(args, "model", None):
        raise K3Error("give --model FILE or --example NAME")
    with open(args.model) as fh:
        return record_model(load_record(fh.read()))


def emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cfg(args, p: int) -> SearchConfig:
    kw = {"p": p, "seed": args.seed, "budget": args.budget, "max_ext": args.max_ext}
    if getattr(args, "method", None):
        kw["groebner_method"] = args.method
    if getattr(args, "spread", None) is not None:
        kw["lift_spread"] = args.spread
    if args.counts_cache:
        kw["counts_cache"] = args.counts_cache
    return SearchConfig(**kw)


def _weil_source(args, example_coeffs=None) -> WeilSource:
    if args.weil_file:
        return WeilSource.user(read_weil_file(args.weil_file))
    if getattr(args, "paper_weil", False):
        if example_coeffs is None:
            raise K3Error("--paper-weil only applies to the built-in examples")
        return WeilSource.paper(example_coeffs)
    return WeilSource.reconstruct()


def _reduce_to(model, p: int):
    F = make_field(p)
    if isinstance(model, DoubleCoverModel):
        return DoubleCoverModel(model.g6.change_ring(F), model.twist)
    return model.reduce(F) if model.ring != F else model


# --- commands -----------------------------------------------------------------------

def cmd_deg6_random(args):
    emit(args, dump_record(model_record(random_degree6_with_line(_cfg(args, args.prime)))))


def cmd_deg6_certify(args):
    pair = load_model(args)
    coeffs = catalog.deg6_weil() if args.example == "deg6-q" else None
    cert = certify_degree6(pair, args.prime, _cfg(args, args.prime), _weil_source(args, coeffs))
    emit(args, cert.serialize())
    return 0 if cert.concluded else 2


def cmd_deg8_disc(args):
    net = load_model(args)
    if args.prime:
        net = _reduce_to(net, args.prime)
    emit(args, dump_record(model_record(disc_sextic(net))))


def cmd_deg8_certify(args):
    net = load_model(args)
    coeffs = catalog.deg8_weil() if args.example == "deg8-q" else None
    cert = certify_degree8(net, args.prime, _cfg(args, args.prime), _weil_source(args, coeffs))
    emit(args, cert.serialize())
    return 0 if cert.concluded else 2


def _double_cover(args) -> DoubleCoverModel:
    m = load_model(args)
    if isinstance(m, Degree6Pair):
        m = branch_sextic(decompose_containing_line(_reduce_to(m, args.prime) if args.prime else m))
    elif isinstance(m, QuadricNet):
        m = disc_sextic(_reduce_to(m, args.prime) if args.prime else m)
    elif args.prime:
        m = _reduce_to(m, args.prime)
    return m


def cmd_zeta_count(args):
    m = _double_cover(args)
    if args.counts_cache:
        pc = count_series(m, args.n, args.counts_cache, args.budget, args.partitions)
        emit(args, "".join("%d %d %d\n" % (pc.p, n, pc.counts[n]) for n in sorted(pc.counts)))
    else:
        N = count_double_cover(m, args.n, partitions=args.partitions, budget=args.budget)
        emit(args, "%d %d %d\n" % (m.g6.ring.p, args.n, N))


def _known(args, p):
    return {"t-p": [-p, 1], "(t-p)^2": [p * p, -2 * p, 1], "(t-p)(t+p)": [-p * p, 0, 1]}[args.known_factor]


def cmd_zeta_weil(args):
    p = args.prime
    pc = load_counts_cache(args.counts_cache, p) if args.counts_cache else PointCounts(p)
    if args.model or args.example:
        m = _double_cover(args)
        pc = count_series(m, args.nmax, args.counts_cache, args.budget)
    cands = reconstruct_weil(pc, _known(args, p), args.eps)
    out = []
    for P in cands:
        out.append("eps %d: %s\n" % (P.eps, " ".join(str(c) for c in P.coeffs)))
    emit(args, "".join(out))


def cmd_rank_bound(args):
    if args.weil_file:
        coeffs = read_weil_file(args.weil_file)
    elif args.example in ("deg6-q", "deg6-f47", "deg6-sextic-f47"):
        coeffs = catalog.deg6_weil()
    elif args.example:
        coeffs = catalog.deg8_weil()
    else:
        raise K3Error("give --weil-file or --example")
    P = WeilPolynomial(args.prime, coeffs)
    v = validate_weil(P)
    rep = cyclotomic_rank_bound(P)
    lines = ["validation: %s" % ("ok" if v.ok else "failed (%s)" % ", ".join(v.failures)),
             "eps: %s" % v.eps,
             "cyclotomic: %s" % " ".join("Phi_%d^%d" % nm for nm in rep.multiplicities),
             "%s: %d%s" % (rep.label, rep.rank_bound, " (odd)" if rep.odd else "")]
    emit(args, "\n".join(lines) + "\n")


def cmd_lines_scan(args):
    m = load_model(args)
    forms = m.forms() if isinstance(m, Degree6Pair) else None
    if forms is None:
        raise K3Error("lines scan expects a degree-6 pair")
    if args.prime:
        forms = [f.change_ring(make_field(args.prime)) for f in forms]
    emit(args, scan_report(lines_on_surface_scan(forms, 4, args.max_ext, budget=args.budget)))


def cmd_lines_free(args):
    m = load_model(args)
    rep = lines_free_over_closure(m.forms(), 4, method=args.method or "direct", report=True)
    cells = " ".join("%s:%s" % (lab, "unit" if u else "open") for lab, u in rep.cells)
    emit(args, "free: %s\nmethod: %s\nprime: %s\ncells: %s\n" % (rep.free, rep.method, rep.auxiliary_prime, cells))
    return 0 if rep.free else 1


def cmd_tritangent_scan(args):
    m = _double_cover(args)
    emit(args, scan_report(tritangent_scan(m.g6, args.max_ext)))


def cmd_lift(args):
    m = _reduce_to(load_model(args), args.prime)
    emit(args, dump_record(model_record(lift_model(m, _cfg(args, args.prime)))))


def cmd_crt_lift(args):
    x = [int(a) for a in args.x.split(",")]
    y = [int(a) for a in args.y.split(",")]
    emit(args, " ".join(str(z) for z in crt_interpolate_lift(x, y, args.p, args.q)) + "\n")


def cmd_verify(args):
    with open(args.certificate) as fh:
        text = fh.read()
    cert = Certificate.parse(text)
    res = verify_certificate(cert)
    emit(args, "valid\n" if res.ok else "invalid: %s\n" % res.broken_link)
    return 0 if res.ok else 1


# --- parser ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, prime_required: bool = False):
    p.add_argument("--prime", type=int, required=prime_required, help="characteristic p")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_P2_BUDGET, help="evaluation budget")
    p.add_argument("--max-ext", type=int, default=2, help="largest extension degree searched")
    p.add_argument("--weil-file", help="Weil polynomial: 23 integers or a polynomial in t")
    p.add_argument("--counts-cache", help="append-only file of 'p n N_n' lines")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--model", help="model file")
    p.add_argument("--example", choices=EXAMPLES, help="built-in example model")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3picard", description="Picard rank certificates for K3 surfaces")
    groups = ap.add_subparsers(dest="group", required=True)

    def sub(group_name, cmd_name, fn, prime_required=False, help=None):
        if cmd_name is None:
            p = groups.add_parser(group_name, help=help)
        else:
            g = _group(group_name)
            p = g.add_parser(cmd_name, help=help)
        _common(p, prime_required)
        p.set_defaults(func=fn)
        return p

    cache: dict = {}

    def _group(name):
        if name not in cache:
            gp = groups.add_parser(name, help=GROUP_HELP.get(name))
            cache[name] = gp.add_subparsers(dest="command", required=True)
        return cache[name]

    sub("deg6", "random", cmd_deg6_random, True, "random pair containing V(x0,x1,x2)")
    p = sub("deg6", "certify", cmd_deg6_certify, True, "certify rank 1 for a rational pair")
    p.add_argument("--method", choices=("direct", "auto", "reduction"))
    p.add_argument("--paper-weil", action="store_true", help="use the printed Weil polynomial (examples only)")
    sub("deg8", "disc", cmd_deg8_disc, False, "discriminant sextic of a net")
    p = sub("deg8", "certify", cmd_deg8_certify, True, "certify rank 1 for a rational net")
    p.add_argument("--method", choices=("direct", "auto", "reduction"))
    p.add_argument("--paper-weil", action="store_true")
    p = sub("zeta", "count", cmd_zeta_count, False, "point count of the double-cover model")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--partitions", type=int, default=1)
    p = sub("zeta", "weil", cmd_zeta_weil, True, "reconstruct the Weil polynomial from counts")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--known-factor", choices=("t-p", "(t-p)^2", "(t-p)(t+p)"), default="(t-p)^2")
    p.add_argument("--eps", type=int, choices=(1, -1))
    sub("rank", "bound", cmd_rank_bound, True, "cyclotomic rank bound of a Weil polynomial")
    sub("lines", "scan", cmd_lines_scan, False, "lines over F_p^m on a degree-6 pair")
    p = sub("lines", "free", cmd_lines_free, False, "decide line-freeness over the closure")
    p.add_argument("--method", choices=("direct", "auto", "reduction"))
    sub("tritangent", "scan", cmd_tritangent_scan, False, "split tritangents of a sextic")
    p = sub("lift", None, cmd_lift, True, "lift a model over F_p to Z")
    p.add_argument("--spread", type=int, default=0)
    p = groups.add_parser("crt-lift", help="CRT-combine two coefficient vectors")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", required=True, help="comma-separated residues mod p")
    p.add_argument("--y", required=True, help="comma-separated residues mod q")
    p.add_argument("--out")
    p.set_defaults(func=cmd_crt_lift)
    p = groups.add_parser("verify", help="verify a certificate file")
    p.add_argument("certificate")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except (K3Error, ValueError, OSError) as exc:
        sys.stderr.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    return rc or 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
