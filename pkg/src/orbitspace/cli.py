"""Command line interface.

Exit codes: 0 success, 2 a semi-decision came back inconclusive, 3 an
invariant was violated, 4 bad input.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

from . import tolerance
from .annulus import build_trivialization, crossing_elements, verify_claim
from .cache import DiskTableStore, cache_dir_from_env
from .cocylinder import cardinality_shift_check, cocyl_report
from .config import Config, group_from_spec, load_config
from .errors import (
    InconsistentVerdicts,
    MixedSignProfile,
    NotHyperbolic,
    OrbitSpaceError,
    ParseError,
    UnknownGenerator,
    ValidationError,
)
from .hyperbolic import classify, enumerate_table, format_word, parse_word, set_table_store
from .lozenges import chain_of_element, simplicity_check
from .render import chain_csv, chain_svg, witness_point
from .report import Report

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_VIOLATION, EXIT_INPUT = 0, 2, 3, 4

COMMANDS = ("info", "classify", "chain", "annulus", "cocyl", "render")


class _Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--group", help="built-in group name (overrides the config)")
    common.add_argument("--depth", type=int, help="enumeration depth for every search")
    common.add_argument("--partner-range", type=int, help="largest chain length tried for partners")
    common.add_argument("--n", type=int, help="number of lozenges in the rendered chain")
    common.add_argument("--tolerance", type=float, help="global comparison tolerance")
    common.add_argument("--render", action="store_true", help="also write SVG and CSV")
    common.add_argument("--out", help="output directory (default: report on stdout only)")
    common.add_argument("--cache-dir", help="persistent enumeration cache directory")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings (breaks byte determinism)")

    parser = argparse.ArgumentParser(prog="orbitspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="describe the group and its enumeration")
    for name, text in (
        ("classify", "lozenge, linking and oracle verdicts for a word"),
        ("chain", "coordinates of the chain of lozenges of a word"),
        ("annulus", "self-intersections of the homotopy annulus of a word"),
        ("cocyl", "co-cylindrical partners and the eta-shift check"),
        ("render", "SVG and CSV of the chain of a word with witness points"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("word")
    return parser


def _resolve_config(args) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    if args.group:
        cfg.group = group_from_spec(args.group)
    if args.depth is not None:
        cfg.depths = {k: args.depth for k in cfg.depths}
    if args.partner_range is not None:
        cfg.partner_range = args.partner_range
    if args.n is not None:
        cfg.chain_length = args.n
    if args.tolerance is not None:
        cfg.tolerance = args.tolerance
    return cfg.validate()


def _element(cfg, word):
    g = cfg.group.element(parse_word(word, cfg.group.rank))
    return g


def _header(report, cfg, args):
    report.add("group", cfg.group.name)
    report.add("group.fingerprint", cfg.group.fingerprint)
    report.add("tolerance", cfg.tolerance)
    if getattr(args, "word", None) is not None:
        report.add("input.word", args.word)


def _cmd_info(cfg, args, report):
    G = cfg.group
    report.add("group.rank", G.rank)
    for x in range(1, G.rank + 1):
        g = G.generators[x - 1]
        report.add(f"generator.{format_word((x,))}.matrix", tuple(g.matrix))
        report.add(f"generator.{format_word((x,))}.class", classify(g).kind.value)
    for key in sorted(cfg.depths):
        report.add(f"depth.{key}", cfg.depths[key])
    d = cfg.depths["lozenge"]
    report.add(f"enumeration.d{d}.count", len(enumerate_table(G, d, cfg.depth_cap)))
    return EXIT_OK


def _add_certificate(report, prefix, cert):
    report.add(f"{prefix}.verdict", cert.verdict)
    report.add(f"{prefix}.depth", cert.depth)
    if cert.witness is not None:
        w = cert.witness
        report.add_element(f"{prefix}.witness", w.element, w.offset)
        report.add(f"{prefix}.witness.corner", w.corner_index)
        report.add(f"{prefix}.witness.lozenge", w.lozenge_index)


def _add_cocyl(report, rep):
    _add_certificate(report, "lozenge", rep.simple_verdict)
    report.add("linking.verdict", rep.linking.verdict)
    report.add("linking.depth", rep.depths["linking"])
    if rep.linking.witness is not None:
        w = rep.linking.witness
        report.add_element("linking.witness", w.element)
        report.add("linking.witness.pair", (w.pair.a_plus.angle, w.pair.a_minus.angle))
        report.add("linking.witness.image_pair", (w.image_pair.a_plus.angle, w.image_pair.a_minus.angle))
    report.add("oracle.depth", rep.depths["oracle"])
    report.add("oracle.crossings_lower_bound", rep.oracle_crossings)
    report.add("partners", rep.partner_indices)
    report.add("trivial_cocylindrical_class", rep.trivial_class)
    report.add("simple", "no" if rep.non_simple else f"no witness up to depth {rep.depths['lozenge']}")


def _cmd_classify(cfg, args, report):
    g = _element(cfg, args.word)
    rep = cocyl_report(
        g,
        cfg.group,
        cfg.depths["linking"],
        cfg.partner_range,
        lozenge_depth=cfg.depths["lozenge"],
        oracle_depth=cfg.depths["oracle"],
    )
    _add_cocyl(report, rep)
    return EXIT_OK if rep.non_simple else EXIT_INCONCLUSIVE


def _cmd_cocyl(cfg, args, report):
    code = _cmd_classify(cfg, args, report)
    g = _element(cfg, args.word)
    ok = cardinality_shift_check(g, cfg.group, cfg.depths["lozenge"], cfg.partner_range)
    report.add("cardinality_shift", ok)
    if not ok:
        raise _Failure(EXIT_VIOLATION, "eta-shift does not carry partner sets onto each other")
    return code


def _cmd_chain(cfg, args, report):
    g = _element(cfg, args.word)
    chain = chain_of_element(g, cfg.chain_length)
    report.add("chain.length", len(chain))
    for i in chain.corner_indices:
        c = chain.corner(i)
        report.add(f"corner.{i}", (c.u, c.s))
    for j in chain.lozenge_indices:
        L = chain.lozenge(j)
        report.add(f"lozenge.{j}.u_range", L.u_range)
        report.add(f"lozenge.{j}.s_range", L.s_range)
    ok = chain.sides_disjoint()
    report.add("chain.sides_disjoint", ok)
    if not ok:
        raise _Failure(EXIT_VIOLATION, "consecutive lozenges share a side")
    return EXIT_OK


def _cmd_annulus(cfg, args, report):
    g = _element(cfg, args.word)
    depth = cfg.depths["annulus"]
    arcs = crossing_elements(g, cfg.group, depth, cfg.depth_cap)
    report.add("annulus.depth", depth)
    report.add("arcs.count", len(arcs))
    for n, a in enumerate(arcs):
        report.add_element(f"arc.{n}", a.element, a.offset)
        report.add(f"arc.{n}.source", a.overlap_source)
        report.add(f"arc.{n}.target", a.overlap_target)
        report.add(f"arc.{n}.class", a.classification.value)
        report.add(f"arc.{n}.sign_profile", a.sign_profile.value)
    claim = verify_claim(arcs)
    report.add("claim.holds", claim)
    if not claim:
        raise _Failure(EXIT_VIOLATION, "an arc maps the leaf interval into itself")
    try:
        cert = build_trivialization(arcs, depth)
    except MixedSignProfile as exc:
        report.add("certificate", "refused")
        report.add("certificate.reason", str(exc))
        return EXIT_INCONCLUSIVE
    report.add("certificate", "ok" if cert.schedule_ok else "failed")
    report.add("certificate.min_gap", cert.min_gap)
    for n, a in enumerate(cert.arcs):
        report.add(f"certificate.arc.{n}.vertical", a.vertical)
    return EXIT_OK if cert.schedule_ok else EXIT_VIOLATION


def _render(cfg, args, report, out_dir):
    g = _element(cfg, args.word)
    chain = chain_of_element(g, cfg.chain_length)
    cert = simplicity_check(chain, cfg.group, cfg.depths["lozenge"], cfg.depth_cap)
    witnesses = []
    if cert.witness is not None:
        witnesses.append((format_word(cert.witness.element.word), witness_point(chain, cert.witness)))
    stem = f"{args.command}-{_slug(args.word)}"
    title = f"{cfg.group.name}: chain of {len(chain)} lozenges for {args.word}"
    svg = chain_svg(chain, witnesses, cfg.render.width, cfg.render.height, title)
    table = chain_csv(chain, witnesses)
    base = Path(out_dir) if out_dir else Path(".")
    base.mkdir(parents=True, exist_ok=True)
    (base / f"{stem}.svg").write_text(svg, encoding="utf-8")
    with open(base / f"{stem}.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(table)
    report.add("render.svg", f"{stem}.svg")
    report.add("render.csv", f"{stem}.csv")
    report.add("render.witnesses", len(witnesses))


def _cmd_render(cfg, args, report):
    return EXIT_OK


_HANDLERS = {
    "info": _cmd_info,
    "classify": _cmd_classify,
    "chain": _cmd_chain,
    "annulus": _cmd_annulus,
    "cocyl": _cmd_cocyl,
    "render": _cmd_render,
}


def _slug(word: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]", "_", word) or "1"


def run_command(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(args.command)
    started = time.perf_counter()
    previous_store = None
    code = EXIT_OK
    try:
        cfg = _resolve_config(args)
        tolerance.set_eps(cfg.tolerance)
        cache_dir = cache_dir_from_env(args.cache_dir)
        if cache_dir:
            previous_store = set_table_store(DiskTableStore(cache_dir))
        _header(report, cfg, args)
        code = _HANDLERS[args.command](cfg, args, report)
        if args.render or args.command == "render":
            _render(cfg, args, report, args.out)
    except _Failure as exc:
        code = exc.code
        report.add("error", f"InvariantViolation: {exc}")
    except (ParseError, ValidationError, UnknownGenerator, NotHyperbolic, FileNotFoundError) as exc:
        code = EXIT_INPUT
        report.add("error", f"{type(exc).__name__}: {exc}")
    except InconsistentVerdicts as exc:
        code = EXIT_VIOLATION
        report.add("error", f"{type(exc).__name__}: {exc}")
    except OrbitSpaceError as exc:
        code = EXIT_INCONCLUSIVE
        report.add("error", f"{type(exc).__name__}: {exc}")
    finally:
        tolerance.set_eps(tolerance.DEFAULT_EPS)
        if previous_store is not None:
            set_table_store(previous_store)
    if args.timings:
        report.add("timing.seconds", round(time.perf_counter() - started, 3))
    report.add("exit_code", code)
    text = report.text()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{args.command}-{_slug(getattr(args, 'word', None) or cfg_name(args))}"
        (out / f"{stem}.report").write_text(text, encoding="utf-8")
    stdout.write(text)
    return code


def cfg_name(args):
    return args.group or "group"


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
