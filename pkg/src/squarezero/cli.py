"""Command line interface.

Every subcommand builds a report of the form ``{"meta": ..., "results": [...]}``
and renders it as text or JSON.  Exit codes: 0 all pass, 1 a verification
failed, 2 usage or parse error, 3 size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import format_simplex
from .closed_form import comparison_map, generators_check, lemma_case, predict, verify_exact_sequence
from .homology import homology_at
from .properties import DEFAULT_SEED, check_boundary_squared, check_summand_preserved, run_suite
from .rings import GroundRing, ModuleDescriptor, RingParseError
from .summands import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    aggregate_homology,
    build_full_complex,
    build_summand_complex,
    contributing_necklaces,
    summand_homology,
)
from .symbols import symbol_word, verify_nontriviality
from .words import CyclicalWord, WordParseError, canonicalize, enumerate_necklaces, necklace_count, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

LEMMA_RINGS = ("Z", "Q", "F2", "F3", "F5", "Z/4", "Z/6")
THEOREM_RINGS = ("Z", "F2", "F3")
EXACTNESS_RINGS = ("Z", "Z/4", "Z/6", "F2")
ORACLE_RINGS = ("Z", "Q", "F2")
ORACLE_SAMPLES = 200
# coefficient rings are limited to these kinds, where the 2-torsion is cyclic
RING_KINDS = ("Z", "Q", "F<p>", "Z/<n>")

_MODULE_SCHEMA = {
    "type": "object",
    "required": ["free_rank", "torsion"],
    "properties": {
        "free_rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "string", "pattern": "^[0-9]+$"}},
    },
}

_SUMMAND_SCHEMA = {
    "type": "object",
    "required": ["word", "period", "case", "modules"],
    "properties": {
        "word": {"type": "string"},
        "period": {"type": "integer", "minimum": 1},
        "case": {"type": "integer", "enum": [1, 2, 3]},
        "modules": {
            "type": "array",
            "items": {
                "allOf": [_MODULE_SCHEMA, {"type": "object", "required": ["degree"],
                                            "properties": {"degree": {"type": "integer"}}}],
            },
        },
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["meta", "results"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["command", "ring", "r", "version", "seed"],
            "properties": {
                "command": {"type": "string"},
                "ring": {"type": "string"},
                "r": {"type": ["integer", "null"]},
                "version": {"type": "string"},
                "seed": {"type": "integer"},
                "passed": {"type": "boolean"},
                "ring_kinds": {"type": "array", "items": {"type": "string"}},
            },
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "degree": {"type": "integer", "minimum": 0},
                    "free_rank": {"type": "integer", "minimum": 0},
                    "torsion": {"type": "array", "items": {"type": "string", "pattern": "^[0-9]+$"}},
                    "summands": {"type": "array", "items": _SUMMAND_SCHEMA},
                    "status": {"type": "string", "enum": ["PASS", "FAIL"]},
                },
                "dependentRequired": {"degree": ["free_rank", "torsion"]},
            },
        },
    },
}


class UsageError(ValueError):
    pass


# -- argument types -----------------------------------------------------------


def ring_type(text: str) -> GroundRing:
    try:
        return GroundRing.parse(text)
    except RingParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _nonnegative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def _rings(args, default: tuple[str, ...]) -> list[GroundRing]:
    rings = args.ring or [GroundRing.parse(s) for s in default]
    return sorted(set(rings), key=lambda R: default.index(R.name) if R.name in default else len(default))


# -- shared pieces -----------------------------------------------------------


def _module_json(module: ModuleDescriptor, degree: int | None = None) -> dict:
    out = {} if degree is None else {"degree": degree}
    out.update(module.to_json())
    return out


def _summand_json(word: CyclicalWord, ring: GroundRing, degree: int | None = None) -> dict:
    degrees = [degree] if degree is not None else range(word.length + 1)
    modules = [(q, summand_homology(word, ring, q).module) for q in degrees]
    return {
        "word": word.spelled(),
        "period": word.period,
        "case": lemma_case(word),
        "modules": [_module_json(M, q) for q, M in modules if degree is not None or not M.is_zero],
    }


def _meta(command: str, rings, r, seed: int) -> dict:
    ring_text = rings.name if isinstance(rings, GroundRing) else ",".join(R.name for R in rings)
    return {"command": command, "ring": ring_text, "r": r, "version": __version__, "seed": seed,
            "ring_kinds": list(RING_KINDS)}


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _check_necklace_budget(r: int, m: int, budget: int) -> None:
    count = necklace_count(r, m)
    if count > budget:
        raise BudgetExceeded(m, count, budget, "necklaces of length")


# -- commands ----------------------------------------------------------------


def cmd_compute(args) -> dict:
    ring = args.ring[0] if args.ring else GroundRing.parse("Z")
    results = []
    for q in range(args.max_q + 1):
        _check_necklace_budget(args.r, q + 1, args.budget)
        total = aggregate_homology(args.r, ring, q).module
        summands = [_summand_json(w, ring, q) for w in contributing_necklaces(args.r, q)]
        results.append({"degree": q, **total.to_json(), "summands": summands})
    return {"meta": _meta("compute", ring, args.r, args.seed), "results": results}


def _parse_word_arg(args) -> tuple[CyclicalWord, int]:
    if args.word is None:
        raise UsageError("the word command needs --word")
    try:
        letters = parse_word(args.word, args.r)
    except WordParseError as exc:
        raise UsageError(str(exc)) from None
    r = args.r if args.r is not None else max(letters, default=1)
    return canonicalize(letters), r


def cmd_word(args) -> dict:
    ring = args.ring[0] if args.ring else GroundRing.parse("Z")
    word, r = _parse_word_arg(args)
    D = build_summand_complex(word, ring, word.length + 2)
    pred = predict(word, ring)
    results = []
    for q in range(word.length + 2):
        h = homology_at(D, q)
        entry = {
            "degree": q,
            **h.module.to_json(),
            "summands": [_summand_json(word, ring, q)],
            "predicted": pred.module_at(q).to_json(),
            "status": _status(h.module == pred.module_at(q)),
            "generators": [{"order": str(g.order), "cycle": str(D.chain(q, g.cycle))} for g in h.generators],
        }
        if args.explain:
            entry["basis"] = [format_simplex(s) for s in D.bases[q]]
            d = D.differential(q) if q >= 1 else None
            entry["differential"] = d.to_dense() if d is not None and d.nrows and d.ncols else []
        results.append(entry)
    report = {"meta": _meta("word", ring, r, args.seed), "results": results}
    report["meta"]["word"] = word.spelled()
    report["meta"]["case"] = pred.case
    return report


def cmd_necklaces(args) -> dict:
    results = []
    for m in range(args.max_m + 1):
        _check_necklace_budget(args.r, m, args.budget)
        words = enumerate_necklaces(args.r, m)
        expected = necklace_count(args.r, m)
        results.append({
            "length": m,
            "count": len(words),
            "formula": expected,
            "status": _status(len(words) == expected),
            "necklaces": [{"word": w.spelled(), "period": w.period, "case": lemma_case(w)} for w in words],
        })
    return {"meta": _meta("necklaces", [], args.r, args.seed), "results": results}


def cmd_verify_lemma(args) -> dict:
    rings = _rings(args, LEMMA_RINGS)
    results = []
    for ring in rings:
        for m in range(args.max_m + 1):
            _check_necklace_budget(args.r, m, args.budget)
            for word in enumerate_necklaces(args.r, m):
                pred = predict(word, ring)
                D = build_summand_complex(word, ring, m + 2)
                mismatches = [q for q in range(m + 2) if homology_at(D, q, generators=False).module != pred.module_at(q)]
                checks = generators_check(word, ring)
                entry = {"ring": ring.name, "word": word.spelled(), "period": word.period, "case": pred.case,
                         "mismatched_degrees": mismatches, "generators": all(checks.values())}
                ok = not mismatches and entry["generators"]
                if m >= 1:
                    cmp = comparison_map(word, ring)
                    entry["comparison_isomorphism"] = cmp.is_isomorphism
                    ok = ok and cmp.is_isomorphism and cmp.unit_maps_to_low_generator and cmp.norm_maps_to_high_generator
                entry["status"] = _status(ok)
                results.append(entry)
    return {"meta": _meta("verify-lemma", rings, args.r, args.seed), "results": results}


def cmd_verify_theorem(args) -> dict:
    rings = _rings(args, THEOREM_RINGS)
    results = []
    for ring in rings:
        for q in range(1, args.r + 1):
            rep = verify_nontriviality(q, args.r, ring)
            results.append({
                "ring": ring.name,
                "degree": q,
                **summand_homology(symbol_word(q), ring, q).module.to_json(),
                "projected": str(rep.projected),
                "matches_permutation_sum": rep.matches_permutation_sum,
                "is_cycle": rep.is_cycle,
                "equals_generator": rep.equals_case2_generator,
                "status": _status(rep.passed),
            })
    return {"meta": _meta("verify-theorem", rings, args.r, args.seed), "results": results}


def cmd_verify_exactness(args) -> dict:
    rings = _rings(args, EXACTNESS_RINGS)
    results = []
    for ring in rings:
        for ell in range(1, args.max_period + 1, 2):
            rep = verify_exact_sequence(ell, ring)
            results.append({
                "ring": ring.name,
                "period": ell,
                "positions": rep.positions,
                "norm_augmentation": rep.norm_augmentation,
                "status": _status(rep.exact and rep.norm_augmentation),
            })
    return {"meta": _meta("verify-exactness", rings, None, args.seed), "results": results}


def cmd_oracle(args) -> dict:
    rings = _rings(args, ORACLE_RINGS)
    results = []
    for ring in rings:
        C = build_full_complex(args.r, ring, args.max_q, args.budget)
        for q in range(args.max_q + 1):
            brute = homology_at(C, q, generators=False).module
            agg = aggregate_homology(args.r, ring, q).module
            results.append({"ring": ring.name, "degree": q, **agg.to_json(),
                            "brute_force": brute.to_json(), "status": _status(brute == agg)})
        for name, check, kw in (("b o b = 0", check_boundary_squared, {"ring": ring}),
                                ("summand decomposition preserved", check_summand_preserved, {})):
            suite = run_suite(f"{name}/{ring.name}", check, ORACLE_SAMPLES, args.seed, r=args.r, **kw)
            results.append({"ring": ring.name, "property": name, "cases": suite.cases,
                            "failures": suite.failures, "status": _status(suite.passed)})
    return {"meta": _meta("oracle", rings, args.r, args.seed), "results": results}


COMMANDS = {
    "compute": cmd_compute,
    "word": cmd_word,
    "necklaces": cmd_necklaces,
    "verify-lemma": cmd_verify_lemma,
    "verify-theorem": cmd_verify_theorem,
    "verify-exactness": cmd_verify_exactness,
    "oracle": cmd_oracle,
}


# -- rendering ---------------------------------------------------------------


def _torsion_text(torsion: list[str]) -> str:
    return "".join(f" + Z/{t}" for t in torsion)


def _module_text(entry: dict, ring_name: str) -> str:
    free, torsion = entry["free_rank"], entry["torsion"]
    if free == 0 and not torsion:
        return "0"
    head = "" if free == 0 else (ring_name if free == 1 else f"{ring_name}^{free}")
    text = head + _torsion_text(torsion)
    return text[3:] if text.startswith(" + ") else text


def _word_text(spelled: str) -> str:
    return "[" + ",".join(f"x{i}" for i in spelled.split(",")) + "]" if spelled else "[0]"


def render_text(report: dict) -> str:
    meta, results = report["meta"], report["results"]
    cmd, ring = meta["command"], meta["ring"]
    lines = []
    if cmd == "compute":
        lines.append(f"HH_q(A/{ring}) for A = {ring}[x1..x{meta['r']}]/(xi xj)")
        for e in results:
            lines.append(f"q={e['degree']}: {_module_text(e, ring)}")
            for s in e["summands"]:
                lines.append(f"    {_word_text(s['word']):<24} period {s['period']}  case {s['case']}  "
                             f"{_module_text(s['modules'][0], ring)}")
    elif cmd == "word":
        lines.append(f"summand {_word_text(meta['word'])} over {ring}: case {meta['case']}")
        for e in results:
            lines.append(f"{e['status']}  H_{e['degree']} = {_module_text(e, ring)}"
                         f"  (predicted {_module_text(e['predicted'], ring)})")
            for g in e["generators"]:
                lines.append(f"      generator of order {g['order']}: {g['cycle']}")
            if "basis" in e:
                lines.append(f"      basis: {', '.join(e['basis']) or '(empty)'}")
                for row in e["differential"]:
                    lines.append(f"      d: {row}")
    elif cmd == "necklaces":
        for e in results:
            lines.append(f"{e['status']}  length {e['length']}: {e['count']} necklaces (formula {e['formula']})")
            for w in e["necklaces"]:
                lines.append(f"    {_word_text(w['word']):<24} period {w['period']}  case {w['case']}")
    else:
        for e in results:
            keys = [k for k in ("ring", "word", "period", "degree", "property") if k in e]
            label = "  ".join(f"{k}={e[k]}" for k in keys)
            lines.append(f"{e['status']}  {cmd}  {label}")
        passed = sum(e["status"] == "PASS" for e in results)
        lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", type=ring_type, action="append",
                        help='ground ring: "Z", "Q", "F<p>" or "Z/<n>"; repeat to sweep several')
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="largest basis allowed in any one degree")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="squarezero", description="Hochschild homology of k[x1..xr]/(xi xj), computed and verified exactly.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="HH_q(A) with a per-necklace breakdown")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--max-q", type=_nonnegative, required=True)

    p = sub.add_parser("word", parents=[common], help="homology of a single summand")
    p.add_argument("--word", required=True, help='comma-separated 1-based letters, e.g. "1,2,1"')
    p.add_argument("--r", type=_positive)
    p.add_argument("--explain", action="store_true", help="list basis simplices and differentials")

    p = sub.add_parser("necklaces", parents=[common], help="enumerate necklaces with periods")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--max-m", type=_nonnegative, required=True)

    p = sub.add_parser("verify-lemma", parents=[common], help="engine against the closed form")
    p.add_argument("--r", type=_positive, default=3)
    p.add_argument("--max-m", type=_nonnegative, default=5)

    p = sub.add_parser("verify-theorem", parents=[common], help="projected symbol classes")
    p.add_argument("--r", type=_positive, default=4)

    p = sub.add_parser("verify-exactness", parents=[common], help="four-term sequence for odd periods")
    p.add_argument("--max-period", type=_positive, default=7)

    p = sub.add_parser("oracle", parents=[common], help="full complex against the summand aggregate")
    p.add_argument("--r", type=_positive, default=2)
    p.add_argument("--max-q", type=_nonnegative, default=4)
    return parser


def _single_ring(args) -> None:
    if args.command in ("compute", "word") and args.ring and len(args.ring) > 1:
        raise UsageError(f"{args.command} takes a single --ring")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _single_ring(args)
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"squarezero: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"squarezero: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    failed = any(e.get("status") == "FAIL" for e in report["results"])
    report["meta"]["passed"] = not failed
    sys.stdout.write(render_json(report) if args.format == "json" else render_text(report))
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
