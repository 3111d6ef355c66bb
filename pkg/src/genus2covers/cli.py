"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 precondition violated, 4 an
identity that must always hold failed (a bug, with a diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields

from .census import census, j_implication_violations, write_csv
from .ellcurve import EllCurve, TwoTorsionIso
from .errors import FalsificationError, ParseError, PreconditionError
from .exactring import GF, parse_list, parse_ring
from .exactring.ratfunc import function_field
from .family import family_report
from .glueconstruct.checks import discriminant, kahler_different, verify_all, weierstrass_pushforward
from .glueconstruct.construct import GluedPair, construct
from .projline import ProjPoint, moebius_from_triples

COMMANDS = ("construct", "verify", "census", "family", "moebius")
FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    command: str
    ring: str = ""
    e: str = ""
    eprime: str = ""
    sigma: str = "1,2,3"
    fmt: str = "text"
    verify: bool = False
    with_sextic: bool = False
    src: str = ""
    dst: str = ""
    p: int = 0
    var: str = "s"
    workers: int = 1
    trace_ext: int = 2
    max_degree: int = 3

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise ParseError(f"unknown output format {self.fmt!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ParseError(f"unknown config keys {sorted(unknown)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        return cls.from_dict(json.loads(text))

    def to_argv(self) -> list:
        """Command line that parses back to this config."""
        c = self.command
        argv = [c]
        if c in ("construct", "verify"):
            argv += ["--field", self.ring, "--e", self.e, "--eprime", self.eprime, "--sigma", self.sigma]
            argv += ["--trace-ext", str(self.trace_ext)]
            if self.verify and c == "construct":
                argv.append("--verify")
        elif c == "census":
            argv += ["--field", self.ring, "--workers", str(self.workers)]
            if self.with_sextic:
                argv.append("--construct")
        elif c == "family":
            argv += ["--p", str(self.p), "--var", self.var, "--e", self.e, "--eprime", self.eprime]
            argv += ["--sigma", self.sigma, "--max-degree", str(self.max_degree)]
        elif c == "moebius":
            argv += ["--ring", self.ring, "--from", self.src, "--to", self.dst]
        argv += ["--format", self.fmt]
        return argv

    @classmethod
    def from_argv(cls, argv) -> RunConfig:
        return cls.from_namespace(build_parser().parse_args(argv))

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> RunConfig:
        c = ns.command
        kw = {"command": c, "fmt": ns.format}
        if c in ("construct", "verify"):
            kw.update(ring=ns.field, e=ns.e, eprime=ns.eprime, sigma=ns.sigma, trace_ext=ns.trace_ext)
            kw["verify"] = c == "verify" or ns.verify
        elif c == "census":
            kw.update(ring=ns.field, with_sextic=ns.construct, workers=ns.workers)
        elif c == "family":
            kw.update(p=ns.p, var=ns.var, e=ns.e, eprime=ns.eprime, sigma=ns.sigma, max_degree=ns.max_degree)
        elif c == "moebius":
            kw.update(ring=ns.ring, src=getattr(ns, "from"), dst=ns.to)
        return cls(**kw)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="genus2covers", description="Degree-2 genus-2 covers glued from two elliptic curves.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_args(sp, fmts=("text", "json")):
        sp.add_argument("--e", required=True, help="roots e1,e2,e3 of E")
        sp.add_argument("--eprime", required=True, help="roots of E'")
        sp.add_argument("--sigma", default="1,2,3", help="sigma(1),sigma(2),sigma(3)")
        sp.add_argument("--format", choices=fmts, default="text")

    for name in ("construct", "verify"):
        sp = sub.add_parser(name, help="build C, f, f'" if name == "construct" else "construct and run every check")
        sp.add_argument("--field", required=True, help="ring descriptor, e.g. q, fp:5, fpk:5:2")
        curve_args(sp)
        sp.add_argument("--trace-ext", type=int, default=2, choices=(1, 2), help="trace check over F_{p^k}")
        if name == "construct":
            sp.add_argument("--verify", action="store_true")

    sp = sub.add_parser("census", help="every (E, E', sigma) over F_p as CSV")
    sp.add_argument("--field", required=True)
    sp.add_argument("--construct", action="store_true", help="fill the sextic column")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("csv",), default="csv")

    sp = sub.add_parser("family", help="the construction over F_p(s)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--var", default="s")
    sp.add_argument("--max-degree", type=int, default=3)
    curve_args(sp)

    sp = sub.add_parser("moebius", help="Moebius map through three points")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--from", required=True, help="three points; 'inf' allowed")
    sp.add_argument("--to", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return ap


# ---------------------------------------------------------------------------


def _parse_sigma(text: str) -> TwoTorsionIso:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad sigma {text!r}") from exc
    if len(vals) != 3:
        raise ParseError(f"sigma needs three entries, got {text!r}")
    return TwoTorsionIso(vals)


def _curves(ring, cfg: RunConfig):
    E = EllCurve(tuple(parse_list(ring, cfg.e)))
    Ep = EllCurve(tuple(parse_list(ring, cfg.eprime)))
    return E, Ep, _parse_sigma(cfg.sigma)


def pair_report(g: GluedPair) -> dict:
    """JSON-ready description of a glued pair."""
    a, b, c, d = g.gamma.entries
    factors = "".join(f"({(g.fbar - e).format('t')})" for e in g.Ep.e)
    V, Vp = kahler_different(g, "f"), kahler_different(g, "fprime")
    D, Dp = discriminant(g, "f"), discriminant(g, "fprime")
    return {
        "ring": g.ring.descriptor,
        "input": {"e": [str(x) for x in g.E.e], "eprime": [str(x) for x in g.Ep.e], "sigma": str(g.psi)},
        "gamma": [[str(a), str(b)], [str(c), str(d)]],
        "a": str(g.a),
        "b": str(g.b),
        "lambda": str(g.lam),
        "sextic": {
            "coefficients": [str(x) for x in g.sextic.coeffs],
            "expanded": g.sextic.format("t"),
            "factored": factors,
        },
        **g.formulas(),
        "weierstrass_pushforward": {
            "f": {str(k): v for k, v in weierstrass_pushforward(g, "f").items()},
            "fprime": {str(k): v for k, v in weierstrass_pushforward(g, "fprime").items()},
        },
        "kahler_different": {
            "f": {"scheme": V.describe(), "split": V.split},
            "fprime": {"scheme": Vp.describe(), "split": Vp.split},
        },
        "discriminant": {"f": D.describe(), "fprime": Dp.describe()},
    }


def _text_pair(rep: dict) -> list:
    (a, b), (c, d) = rep["gamma"]
    lines = [
        f"ring        {rep['ring']}",
        f"E           e = {', '.join(rep['input']['e'])}",
        f"E'          e' = {', '.join(rep['input']['eprime'])}",
        f"sigma       {rep['input']['sigma']}",
        f"gamma       [[{a}, {b}], [{c}, {d}]]",
        f"a           {rep['a']}",
        f"b           {rep['b']}",
        f"lambda      {rep['lambda']}",
        f"C           y^2 = {rep['sextic']['expanded']}",
        f"            y^2 = {rep['sextic']['factored']}",
        f"f           x = {rep['f']['x']},  y_E = {rep['f']['y']}",
        f"f'          x' = {rep['fprime']['x']},  y' = {rep['fprime']['y']}",
        f"V(f)        {rep['kahler_different']['f']['scheme']}",
        f"V(f')       {rep['kahler_different']['fprime']['scheme']}",
        f"Delta(f)    {rep['discriminant']['f']}",
        f"Delta(f')   {rep['discriminant']['fprime']}",
    ]
    if "checks" in rep:
        lines.append("checks")
        width = max(map(len, rep["checks"]))
        lines += [f"  {k.ljust(width)}  {v.upper()}" for k, v in rep["checks"].items()]
    return lines


def _run_construct(cfg: RunConfig, out) -> int:
    ring = parse_ring(cfg.ring)
    E, Ep, psi = _curves(ring, cfg)
    g = construct(E, Ep, psi)
    rep = pair_report(g)
    failed = []
    if cfg.verify:
        checks = verify_all(g, trace_ext=cfg.trace_ext)
        rep["checks"] = {k: "pass" if v else "fail" for k, v in checks.items()}
        failed = [k for k, v in checks.items() if not v]
    if cfg.fmt == "json":
        print(json.dumps(rep, indent=2), file=out)
    else:
        print("\n".join(_text_pair(rep)), file=out)
    if failed:
        print(f"falsified: {', '.join(failed)}", file=sys.stderr)
        return 4
    return 0


def _run_census(cfg: RunConfig, out) -> int:
    K = parse_ring(cfg.ring)
    rows = []

    def keep(it):
        for r in it:
            if r.j != r.jp and not r.theta_smooth:
                rows.append(r)
            yield r

    n = write_csv(keep(census(K, with_sextic=cfg.with_sextic, workers=cfg.workers)), out)
    bad = j_implication_violations(rows)
    print(f"{n} rows; j != j' implies theta-smooth: {'ok' if not bad else f'{len(bad)} violations'}", file=sys.stderr)
    return 4 if bad else 0


def _run_family(cfg: RunConfig, out) -> int:
    if cfg.max_degree < 1:
        raise PreconditionError("--max-degree must be at least 1")
    S = function_field(GF(cfg.p), cfg.var)
    E, Ep, psi = _curves(S, cfg)
    rep = family_report(E, Ep, psi, max_degree=cfg.max_degree)
    data = {
        "ring": S.descriptor,
        "globally_bad": rep.globally_bad,
        "bad_locus": [
            {"s0": str(b.s0), "field_degree": b.degree, "reasons": sorted(b.reasons)} for b in rep.bad_locus
        ],
    }
    if rep.generic is not None:
        data["generic"] = pair_report(rep.generic)
        data["specializations"] = {
            str(s0): {"lambda": str(g.lam), "sextic": g.sextic.format("t"), "x": str(g.x_of_t)}
            for s0, g in sorted(rep.specializations.items(), key=lambda kv: kv[0].key)
        }
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2), file=out)
        return 0
    lines = [f"ring          {S.descriptor}"]
    if rep.globally_bad:
        lines.append("globally bad: gamma fixes infinity for every s")
    else:
        lines.append(f"generic C     y^2 = {data['generic']['sextic']['expanded']}")
        lines.append(f"generic f     x = {data['generic']['f']['x']}")
        lines.append("bad locus")
        lines += [f"  {b.describe()}" for b in rep.bad_locus] or ["  (empty)"]
        lines.append("specializations")
        for s0, d in data["specializations"].items():
            lines.append(f"  s = {s0}: lambda = {d['lambda']}, y^2 = {d['sextic']}")
    print("\n".join(lines), file=out)
    return 0


def _run_moebius(cfg: RunConfig, out) -> int:
    R = parse_ring(cfg.ring)

    def pts(text):
        items = [x.strip() for x in text.split(",")]
        if len(items) != 3:
            raise ParseError(f"need three points, got {text!r}")
        return [ProjPoint.parse(R, x) for x in items]

    m = moebius_from_triples(pts(cfg.src), pts(cfg.dst))
    a, b, c, d = m.entries
    if cfg.fmt == "json":
        print(json.dumps({"ring": R.descriptor, "matrix": [[str(a), str(b)], [str(c), str(d)]],
                          "map": m.rational_form("t")}), file=out)
    else:
        print(f"{m.matrix_str()}\nt -> {m.rational_form('t')}", file=out)
    return 0


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    handler = {
        "construct": _run_construct,
        "verify": _run_construct,
        "census": _run_census,
        "family": _run_family,
        "moebius": _run_moebius,
    }[cfg.command]
    try:
        return handler(cfg, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except FalsificationError as exc:
        print(f"falsification: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


def main(argv=None) -> int:
    try:
        cfg = RunConfig.from_argv(sys.argv[1:] if argv is None else argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
