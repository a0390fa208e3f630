"""``gsb`` command-line front end.

Every run prints (or writes with ``-o``) one JSON report.  Exit codes: 0 on
success, 1 when a computation fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .completion import complete, fold, verify_gsb
from .core import Polynomial
from .errors import DomainError, GSBError, ParseError
from .orders import ReverseTower
from .growth import (ForbiddenSet, build_irr_automaton, classify_growth, count_normal_words,
                     dim_filtration, free_submonoid_check, gkdim_report, max_states_default)
from .presentations import OreSpec, manturov, ore_extension, word_problem
from .rewrite import RewriteSystem, normal_form
from .textio import (SYSTEM_HEADER, format_presentation, format_system, parse_polynomial,
                     parse_presentation_file, parse_system_file)

log = logging.getLogger("gsb")


@dataclass
class CommandConfig:
    subcommand: str
    input: str | None = None
    args: list = field(default_factory=list)
    max_deg: int = 12
    max_rules: int = 500
    max_rounds: int = 50
    schema_bound: int = 10
    step_budget: int = 10**6
    max_states: int = 10**5
    length: int = 50
    output: str | None = None
    use_cache: bool = True
    verbosity: int = 0

    def __post_init__(self):
        for name in ("max_deg", "max_rules", "max_rounds", "schema_bound", "step_budget", "max_states"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be positive")


class UsageError(GSBError):
    code = "usage_error"


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _caps_signature(cfg: CommandConfig) -> str:
    return f"max_deg={cfg.max_deg};max_rules={cfg.max_rules};max_rounds={cfg.max_rounds}"


@dataclass
class Loaded:
    pres: object | None
    sys: RewriteSystem
    info: dict


def _complete_and_fold(pres, cfg: CommandConfig):
    sys, report = complete(pres, cfg.max_deg, cfg.max_rules, cfg.max_rounds, cfg.step_budget)
    folded = fold(sys)
    ver = verify_gsb(folded, cfg.schema_bound, cfg.step_budget)
    info = {
        "completion_status": report.status,
        "pending_compositions": report.pending_count,
        "schemas_inferred": len(folded.schemas),
        "certified": ver.certified,
        "schema_bound": cfg.schema_bound,
    }
    return folded, report, ver, info


def load_system(cfg: CommandConfig) -> Loaded:
    path = Path(cfg.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if text.lstrip().startswith(SYSTEM_HEADER):
        sys_, meta = parse_system_file(text)
        ver = verify_gsb(sys_, cfg.schema_bound, cfg.step_budget)
        return Loaded(None, sys_, {"system_source": "file", "certified": ver.certified,
                                   "schema_bound": cfg.schema_bound})
    pres = parse_presentation_file(text)
    key = _digest(text + "\n" + _caps_signature(cfg))
    cache = path.with_suffix(".gsb")
    if cfg.use_cache and cache.exists():
        try:
            sys_, meta = parse_system_file(cache.read_text())
        except GSBError:
            meta = {}
        if meta.get("source") == key:
            info = json.loads(meta.get("note", "{}"))
            return Loaded(pres, sys_, info)
    folded, _, _, info = _complete_and_fold(pres, cfg)
    if cfg.use_cache:
        try:
            cache.write_text(format_system(folded, key, json.dumps(info, sort_keys=True)))
        except OSError as exc:
            log.warning("could not write cache %s: %s", cache, exc)
    return Loaded(pres, folded, info)


def _word(sys_: RewriteSystem, text: str):
    try:
        return sys_.alphabet.word(text)
    except DomainError as exc:
        raise ParseError(f"bad word {text!r}: {exc}") from None


def _system_json(sys_: RewriteSystem) -> dict:
    A = sys_.alphabet
    out = {"order": sys_.order.spec(),
           "rules": [r.format(sys_.order) for r in sys_.rules],
           "schemas": [s.format(A, spaced=False) for s in sys_.schemas]}
    if A.aliases is not None:
        out["aliases"] = dict(zip(A.aliases, A.letters))
    return out


def run_command(cfg: CommandConfig) -> dict:
    """Dispatch one subcommand and return its result payload."""
    cmd = cfg.subcommand
    if cmd == "manturov":
        n, k = (int(x) for x in cfg.args)
        pres = manturov(n, k)
        return {"presentation": format_presentation(pres), "generators": len(pres.alphabet),
                "relations": len(pres.relations)}
    if cmd == "ore":
        from .core import Alphabet
        Y = Alphabet(("y",))
        sigma, delta = cfg.args
        pres = ore_extension(OreSpec(parse_polynomial(sigma, Y), parse_polynomial(delta, Y)))
        return {"presentation": format_presentation(pres)}

    if cmd == "complete":
        path = Path(cfg.input)
        text = path.read_text()
        pres = parse_presentation_file(text)
        folded, report, ver, info = _complete_and_fold(pres, cfg)
        if cfg.use_cache:
            key = _digest(text + "\n" + _caps_signature(cfg))
            path.with_suffix(".gsb").write_text(format_system(folded, key, json.dumps(info, sort_keys=True)))
        raw_sys = RewriteSystem(folded.alphabet, folded.order,
                                tuple(folded.rules), tuple(folded.schemas))
        out = report.to_json(raw_sys)
        out.update({"certified": ver.certified, "schema_bound": ver.schema_bound,
                    "system": _system_json(folded)})
        return out

    loaded = load_system(cfg)
    sys_ = loaded.sys
    A = sys_.alphabet
    base = {"system_info": loaded.info}
    if isinstance(sys_.order, ReverseTower) and len(A) > 2:
        base["order_note"] = "reverse tower order on more than two letters (mirror of the tower order)"
    certified = loaded.info.get("certified", False)

    if cmd == "verify":
        ver = verify_gsb(sys_, cfg.schema_bound, cfg.step_budget)
        base.update(ver.to_json(sys_))
        base["status"] = "certified" if ver.certified else "not_certified"
        base["system"] = _system_json(sys_)
        return base
    if cmd == "nf":
        (text,) = cfg.args
        try:
            p = parse_polynomial(text, A, sys_.field)
        except ParseError:
            raise
        nf = normal_form(p, sys_, cfg.step_budget)
        base.update({"input": p.format(sys_.order), "normal_form": nf.format(sys_.order),
                     "canonical": bool(certified)})
        return base
    if cmd == "wp":
        u, v = (_word(sys_, t) for t in cfg.args)
        verdict = word_problem(sys_, u, v, cfg.schema_bound if certified else None)
        base.update(verdict.to_json(A))
        return base
    if cmd == "growth":
        aut = build_irr_automaton(ForbiddenSet.from_system(sys_), A, cfg.max_states)
        cls = classify_growth(aut)
        per, cum = count_normal_words(aut, cfg.length)
        base.update({"classification": str(cls), "automaton_states": aut.n_states,
                     "per_length": [str(c) for c in per], "counts": [str(c) for c in cum]})
        return base
    if cmd == "gkdim":
        rep = gkdim_report(loaded.pres, sys_, cfg.length, cfg.schema_bound, cfg.max_states)
        base.update(rep.to_json())
        return base
    if cmd == "filtration":
        (n,) = cfg.args
        table = dim_filtration(loaded.pres, sys_, int(n))
        base.update(table.to_json())
        return base
    if cmd == "free-check":
        (spec,) = cfg.args
        gens = [_word(sys_, t) for t in spec.split(",") if t.strip()]
        aut = build_irr_automaton(ForbiddenSet.from_system(sys_), A, cfg.max_states)
        res = free_submonoid_check(aut, gens)
        base.update(res.to_json(A))
        if not certified:
            base["exploratory"] = True
        return base
    raise UsageError(f"unknown subcommand {cmd!r}")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsb", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"gsb {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-deg", type=int, default=12)
    common.add_argument("--max-rules", type=int, default=500)
    common.add_argument("--max-rounds", type=int, default=50)
    common.add_argument("--schema-bound", type=int, default=10)
    common.add_argument("--step-budget", type=int, default=10**6)
    common.add_argument("--max-states", type=int, default=None,
                        help="automaton state cap (default: $GSB_MAX_STATES or 100000)")
    common.add_argument("--length", type=int, default=50, help="census length for growth/gkdim")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write <input>.gsb")
    common.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        return p

    add("complete", "input", help="bounded completion; caches <input>.gsb")
    add("verify", "input", help="check all compositions up to --schema-bound")
    add("nf", "input", "word", help="normal form of a word or polynomial")
    add("wp", "input", "u", "v", help="word problem u = v")
    add("growth", "input", help="census and growth classification")
    add("gkdim", "input", help="GK-dimension report")
    add("filtration", "input", "n", help="d_A(n) and d~(n) tables")
    add("free-check", "input", "gens", help="comma-separated generators of a candidate free submonoid")
    add("manturov", "n", "k", help="print the Manturov (k, n) presentation")
    p = add("ore", help="print the Ore extension presentation")
    p.add_argument("--sigma", required=True)
    p.add_argument("--delta", default="0")
    return ap


def _config(ns: argparse.Namespace) -> CommandConfig:
    cmd = ns.subcommand
    positional = {
        "nf": ["word"], "wp": ["u", "v"], "filtration": ["n"], "free-check": ["gens"],
        "manturov": ["n", "k"],
    }.get(cmd, [])
    args = [getattr(ns, a) for a in positional]
    if cmd == "ore":
        args = [ns.sigma, ns.delta]
    for a in args:
        if cmd in ("manturov", "filtration") and not str(a).lstrip("-").isdigit():
            raise UsageError(f"expected an integer, got {a!r}")
    return CommandConfig(
        subcommand=cmd, input=getattr(ns, "input", None), args=args,
        max_deg=ns.max_deg, max_rules=ns.max_rules, max_rounds=ns.max_rounds,
        schema_bound=ns.schema_bound, step_budget=ns.step_budget,
        max_states=ns.max_states if ns.max_states is not None else max_states_default(),
        length=ns.length, output=ns.output, use_cache=not ns.no_cache, verbosity=ns.verbose)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = _parser().parse_args(argv)  # exits with status 2 on usage errors
    logging.basicConfig(level=logging.WARNING - 10 * min(ns.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    doc = {"tool": "gsb", "version": __version__, "command": ["gsb"] + argv}
    input_path = getattr(ns, "input", None)
    if input_path and Path(input_path).exists():
        doc["input_digest"] = _digest(Path(input_path).read_text())
    t0 = time.perf_counter()
    code = 0
    try:
        cfg = _config(ns)
        doc["result"] = run_command(cfg)
    except (ParseError, UsageError, OSError) as exc:
        doc["result"] = None
        doc["error"] = {"code": getattr(exc, "code", "usage_error"), "message": str(exc)}
        code = 2
    except GSBError as exc:
        doc["result"] = None
        doc["error"] = {"code": exc.code, "message": str(exc)}
        code = 1
    doc["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    text = json.dumps(doc, indent=2, sort_keys=True)
    if ns.output:
        Path(ns.output).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
