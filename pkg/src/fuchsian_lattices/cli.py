"""Command-line front end.

Every subcommand writes a JSON certificate (or a text/TSV rendering) and
exits 0 on pass, 1 on a verification failure (the report is still written)
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import certificates as certs
from .algebra import FieldError
from .building import (BuildingError, DisconnectedGraph, build_projective_plane,
                       build_symplectic_quadrangle, import_building)
from .complexes import ComplexError, build_gyn, glue_complexes, verify_complex
from .covolume import CovolumeReport, covolume_table
from .graph_of_groups import LemmaViolation, levi_data, quotient_graph_of_groups
from .groups import CAP_ENV, GroupTooLarge, generate_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class StageFailure(Exception):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["A2", "C2", "file"], default="A2",
                        help="A2: PG(2,q) with SL3(q); C2: W(q) with PSp4(q); file: --input")
    common.add_argument("--q", type=int, default=2, help="prime field size (default 2)")
    common.add_argument("--input", help="building JSON for --family file")
    common.add_argument("--base-vertex", type=int, default=0, help="vertex v with P = Stab(v)")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--format", choices=["json", "text", "tsv"], default="json")

    parser = argparse.ArgumentParser(
        prog="fuchsian-lattices",
        description="Lattices in Fuchsian buildings from finite generalised polygons. "
                    f"Group enumeration is capped by ${CAP_ENV}.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="export Δ and generators of G")
    vp = sub.add_parser("verify-polygon", parents=[common], help="certify Δ is a generalised m-gon")
    vp.add_argument("--require-thick", action="store_true")
    sub.add_parser("quotient", parents=[common], help="the ray P\\Δ with its groups")
    sub.add_parser("levi", parents=[common], help="U_P, L_P, K_P and the index identity")
    cx = sub.add_parser("complex", parents=[common], help="build and verify G(Y_n)")
    cx.add_argument("--k", type=int, default=8)
    cx.add_argument("--n", type=_positive, default=1)
    gl = sub.add_parser("glue", parents=[common], help="build and verify G(Y_1) ∪ ... ∪ G(Y_N)")
    gl.add_argument("--k", type=int, default=8)
    gl.add_argument("--N", type=_positive, default=3)
    cv = sub.add_parser("covolume", parents=[common], help="exact covolume series and limit")
    cv.add_argument("--k", type=int, default=8)
    cv.add_argument("--N", type=_positive, default=5)
    cv.add_argument("--epsilon", type=_fraction, help="rational ε for the nondiscreteness N")
    pl = sub.add_parser("pipeline", parents=[common], help="every stage in order")
    pl.add_argument("--k", type=int, default=8)
    pl.add_argument("--n", type=_positive, default=1)
    pl.add_argument("--N", type=_positive, default=3)
    pl.add_argument("--epsilon", type=_fraction, default=Fraction(1, 1000))
    rv = sub.add_parser("reverify", help="recheck a certificate from its own contents")
    rv.add_argument("certificate")
    rv.add_argument("--output")
    rv.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def _check_k(args, glue: bool):
    k = args.k
    if k < 4 or k % 2:
        raise UsageError(f"k must be an even integer >= 4, got {k}")
    if glue and k % 4:
        raise UsageError("k must be divisible by 4")


def load_building(args):
    if args.family == "file":
        if not args.input:
            raise UsageError("--family file requires --input")
        return import_building(args.input)
    if args.input:
        raise UsageError("--input is only valid with --family file")
    builder = build_projective_plane if args.family == "A2" else build_symplectic_quadrangle
    try:
        return builder(args.q)
    except (ValueError, FieldError) as exc:
        raise UsageError(str(exc)) from exc


class Session:
    """Lazily computed stages shared by one invocation."""

    def __init__(self, args):
        self.args = args
        self.graph, self.gens = load_building(args)
        if not 0 <= args.base_vertex < self.graph.n_vertices:
            raise UsageError(f"base vertex {args.base_vertex} is out of range")
        self._group = self._ray = self._levi = None

    def polygon(self, require_thick: bool) -> dict:
        return certs.polygon_certificate(self.graph, require_thick)

    def require_polygon(self):
        cert = self.polygon(True)
        if not cert["verdict"]:
            raise StageFailure("Δ is not a thick generalised polygon; refusing to continue", cert)

    @property
    def group(self):
        if self._group is None:
            self._group = generate_group(self.gens, self.graph.n_vertices,
                                         char_p=self.graph.char_p)
        return self._group

    @property
    def ray(self):
        if self._ray is None:
            self.require_polygon()
            self._ray = quotient_graph_of_groups(self.graph, self.group, self.args.base_vertex)
        return self._ray

    @property
    def levi(self):
        if self._levi is None:
            if self.graph.char_p is None:
                raise UsageError("the building carries no char_p")
            self._levi = levi_data(self.ray, self.graph.char_p, strict=False)
            if not self._levi.ok:
                raise StageFailure("Levi data failed", certs.lemma_certificate(self._levi))
        return self._levi

    def complex(self, n: int) -> dict:
        c = build_gyn(self.levi, self.args.k, n)
        v = verify_complex(c, self.graph, keep_links=True)
        extra = {"n": n}
        if n > 1:
            base = verify_complex(build_gyn(self.levi, self.args.k, 1), self.graph)
            extra["n_independent"] = base.links.color_types() == v.links.color_types()
        cert = certs.complex_certificate(v, extra)
        cert["verdict"] = cert["verdict"] and extra.get("n_independent", True)
        return cert

    def glue(self, N: int) -> dict:
        c = glue_complexes(self.levi, self.args.k, N)
        v = verify_complex(c, self.graph, keep_links=True)
        return certs.complex_certificate(v, {"N": N})

    def covolume(self, N: int, eps) -> tuple[dict, CovolumeReport]:
        d = self.levi
        report = CovolumeReport.build(d, N, eps)
        orders = glue_complexes(d, self.args.k, N).zero_vertex_orders()
        extra = {"orders_from_complex": orders,
                 "series_from_complex_matches": orders == report.summand_orders,
                 "k": self.args.k}
        return certs.covolume_certificate(report, d.orders(), extra), report


def _covolume_tsv(args, m: int, report: CovolumeReport) -> str:
    rows = [(args.q, m, args.k, n, x) for n, x in enumerate(report.partial_sums, start=1)]
    rows.append((args.q, m, args.k, "inf", report.limit))
    return covolume_table(rows)


def _text(cert: dict) -> str:
    kind = cert["kind"]
    lines = [f"{kind}: {'PASS' if cert['verdict'] else 'FAIL'}"]
    if kind == "polygon":
        c = cert["certificate"]
        lines.append(f"m={c['m']} girth={c['girth']} valences={c['valences']} thick={c['thick']}")
    elif kind == "quotient":
        r = cert["ray"]
        lines.append(f"vertex groups {r['vertex_group_orders']} edge groups {r['edge_group_orders']}")
    elif kind == "lemma":
        lines.append(" ".join(f"|{k}|={v}" for k, v in cert["levi"]["orders"].items()))
    elif kind == "complex":
        rep = cert["report"]
        lines.append(f"{rep['kind']}: link types {rep['links']['color_types']}")
        lines += [f"failing cell {c}" for c in rep["failing_cells"]]
    elif kind == "covolume":
        rep = cert["report"]
        lines.append(f"partial sums {rep['partial_sums']} limit {rep['limit']}")
        if "nondiscreteness" in rep:
            lines.append(f"N(ε={rep['nondiscreteness']['epsilon']}) = {rep['nondiscreteness']['N']}")
    elif kind == "pipeline":
        lines += ["  " + _text(s).replace("\n", "\n  ") for s in cert["stages"]]
    elif kind == "reverify":
        lines += cert["problems"]
    elif kind == "error":
        lines.append(cert["error"])
    return "\n".join(lines)


def _emit(args, cert: dict, tsv: str | None = None):
    if args.format == "tsv":
        if tsv is None:
            raise UsageError("--format tsv is only available for covolume and pipeline")
        text = tsv
    elif args.format == "text":
        text = _text(cert) + "\n"
    else:
        text = certs.dumps(cert)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def run(args) -> int:
    if args.command == "reverify":
        try:
            with open(args.certificate, encoding="utf-8") as f:
                cert = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read certificate: {exc}") from exc
        ok, problems = certs.reverify(cert)
        out = {"kind": "reverify", "schema": certs.SCHEMA, "certificate_kind": cert.get("kind"),
               "recorded_verdict": cert.get("verdict"), "verdict": ok, "problems": problems}
        _emit(args, out)
        return EXIT_OK if ok else EXIT_FAIL

    if args.command in ("complex", "covolume", "pipeline"):
        _check_k(args, glue=False)
    if args.command in ("glue", "covolume", "pipeline"):
        _check_k(args, glue=True)
    if args.format == "tsv" and args.command not in ("covolume", "pipeline"):
        raise UsageError("--format tsv is only available for covolume and pipeline")

    s = Session(args)
    tsv = None
    if args.command == "build":
        cert = certs.building_certificate(s.graph, s.gens)
    elif args.command == "verify-polygon":
        cert = s.polygon(args.require_thick)
    elif args.command == "quotient":
        cert = certs.quotient_certificate(s.ray)
    elif args.command == "levi":
        cert = certs.lemma_certificate(s.levi)
    elif args.command == "complex":
        cert = s.complex(args.n)
    elif args.command == "glue":
        cert = s.glue(args.N)
    elif args.command == "covolume":
        cert, report = s.covolume(args.N, args.epsilon)
        tsv = _covolume_tsv(args, s.levi.m, report)
    else:
        stages = [certs.building_certificate(s.graph, s.gens), s.polygon(True)]
        try:
            if stages[-1]["verdict"]:
                stages.append(certs.quotient_certificate(s.ray))
                stages.append(certs.lemma_certificate(s.levi))
                stages += [s.complex(n) for n in range(1, args.n + 1)]
                stages.append(s.glue(args.N))
                cov, report = s.covolume(args.N, args.epsilon)
                stages.append(cov)
                tsv = _covolume_tsv(args, s.levi.m, report)
        except StageFailure as exc:
            stages.append(exc.report)
        cert = {"kind": "pipeline", "schema": certs.SCHEMA, "stages": stages,
                "verdict": all(st["verdict"] for st in stages)}
        if tsv is None and args.format == "tsv":
            tsv = ""
    _emit(args, cert, tsv)
    return EXIT_OK if cert["verdict"] else EXIT_FAIL


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except UsageError as exc:
        parser.error(str(exc))
    except StageFailure as exc:
        exc.report.setdefault("error", str(exc))
        if args.format == "tsv":
            print(str(exc), file=sys.stderr)
        else:
            _emit(args, exc.report)
        return EXIT_FAIL
    except (BuildingError, DisconnectedGraph, LemmaViolation, GroupTooLarge, ComplexError) as exc:
        report = {"kind": "error", "schema": certs.SCHEMA, "verdict": False,
                  "error": str(exc), "type": type(exc).__name__}
        record = getattr(exc, "record", None) or getattr(exc, "report", None)
        if record is not None:
            report["record"] = record
        if args.format == "tsv":
            print(str(exc), file=sys.stderr)
        else:
            _emit(args, report)
        return EXIT_FAIL
    return EXIT_OK  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
