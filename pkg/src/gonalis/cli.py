"""Command-line front end: ``gonalis <command> --in FILE [options]``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 the question does not
apply to this curve, 3 the time budget ran out (bounds are still reported).
"""
from __future__ import annotations

import argparse
import json
import signal
import sys
from dataclasses import dataclass
from typing import List, Optional

from .curvein import (CanonicalModel, HyperellipticImage, HyperellipticModel, InputError, PlaneModel,
                      canonical_ideal, delta_genus, map_degree, parse_curve_text)
from .fixtures import scroll_of_type
from .invariants import gonality_upper_bound, plane_gonality_bounds

EXIT_OK, EXIT_INPUT, EXIT_NOT_APPLICABLE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 20231
COMMANDS = ("betti", "goneric", "gonal", "tetragonal", "radparam", "lie", "scroll-check")


class Inapplicable(Exception):
    def __init__(self, tag: str, message: str, extra: Optional[dict] = None):
        super().__init__(message)
        self.tag = tag
        self.extra = extra or {}


class OutOfTime(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    input: Optional[str] = None
    field: Optional[str] = None
    seed: int = DEFAULT_SEED
    budget_minutes: Optional[float] = None
    pretty: bool = False
    out: Optional[str] = None
    scroll_type: Optional[List[int]] = None
    samples: int = 20
    precision: int = 64

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.budget_minutes is not None and self.budget_minutes <= 0:
            raise ValueError("budget must be positive")
        if self.samples <= 0 or self.precision <= 0:
            raise ValueError("samples and precision must be positive")


# -- input -----------------------------------------------------------------------------------------

def read_model(config: JobConfig):
    if config.input is None:
        raise InputError("--in is required for this command")
    try:
        with open(config.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {config.input}: {exc.strerror}") from None
    if config.field:
        # drop declared fields; blank lines keep the reported line numbers intact
        lines = ["" if ln.strip().lower().startswith("field") else ln for ln in text.splitlines()]
        text = f"field {config.field}\n" + "\n".join(lines)
    return parse_curve_text(text)


def as_canonical(model) -> CanonicalModel:
    if isinstance(model, HyperellipticModel):
        raise Inapplicable("hyperelliptic", "hyperelliptic curves have no canonical curve model",
                           {"gonality": 2})
    if isinstance(model, PlaneModel):
        try:
            return canonical_ideal(model)
        except HyperellipticImage as exc:
            raise Inapplicable("hyperelliptic", str(exc), {"gonality": 2}) from None
    return model


def _bounds(model) -> Optional[list]:
    """Cheap gonality bounds for partial certificates."""
    if isinstance(model, HyperellipticModel):
        return [2, 2]
    if isinstance(model, PlaneModel) and model.adjoint_rule == "ordinary" and model.degree >= 3:
        delta, _ = delta_genus(model)
        return plane_gonality_bounds(model.degree, model.max_multiplicity, delta).as_list()
    if isinstance(model, CanonicalModel):
        return [3, gonality_upper_bound(model.genus)]
    return None


# -- commands --------------------------------------------------------------------------------------

def cmd_betti(model, config: JobConfig) -> dict:
    from .resolution import betti_via_koszul, linear_colength
    C = as_canonical(model)
    table = betti_via_koszul(C.ideal, C.ring, seed=config.seed, genus=C.genus)
    return {"genus": C.genus, "rows": table.rows(), "linear_colength": linear_colength(table),
            "_pretty": table.pretty()}


def _verified(gm, C: CanonicalModel) -> dict:
    d = map_degree(C.ideal, gm.num, gm.den, 2 * C.genus - 2)
    if d != gm.gonality:
        raise RuntimeError(f"map degree {d} disagrees with reported gonality {gm.gonality}")
    return gm.to_json()


def cmd_goneric(model, config: JobConfig) -> dict:
    from .scrollar import ConjectureCounterexample, NotGoneric, PlaneQuintic, goneric_pipeline
    C = as_canonical(model)
    try:
        gm = goneric_pipeline(C, config.seed)
    except PlaneQuintic as exc:
        raise Inapplicable("plane_quintic", str(exc)) from None
    except (NotGoneric, ConjectureCounterexample) as exc:
        raise Inapplicable("not_goneric", str(exc)) from None
    return _verified(gm, C)


def cmd_gonal(model, config: JobConfig) -> dict:
    from .scrollar import gonal_map
    if isinstance(model, HyperellipticModel):
        return gonal_map(model, config.seed).to_json()
    try:
        C = as_canonical(model)
    except Inapplicable as exc:
        if exc.tag == "hyperelliptic":
            return {"gonality": 2, "path": "hyperelliptic", "map": None,
                    "certificate": {"reason": str(exc)}}
        raise
    return _verified(gonal_map(C, config.seed), C)


def cmd_tetragonal(model, config: JobConfig) -> dict:
    from .tetragonal import NotTetragonalWindow, UnexpectedBettiValue, tetragonal_report
    C = as_canonical(model)
    try:
        cls, maps = tetragonal_report(C, config.seed)
    except (NotTetragonalWindow, UnexpectedBettiValue) as exc:
        raise Inapplicable("not_tetragonal", str(exc)) from None
    out = cls.to_json()
    out["pencils"] = [_verified(gm, C) for gm in maps]
    return out


def cmd_radparam(model, config: JobConfig) -> dict:
    from .radical import CharacteristicUnsupported, NotApplicable, radparam
    try:
        return radparam(model, config.seed, config.samples, config.precision)
    except NotApplicable as exc:
        raise Inapplicable(exc.tag, str(exc), {"bounds": exc.bounds}) from None
    except CharacteristicUnsupported as exc:
        raise Inapplicable("characteristic", str(exc)) from None


def _scroll_of(model, config: JobConfig):
    from .fixtures import minors2
    if config.scroll_type is not None or model is None:
        phi = scroll_of_type(config.scroll_type or [1, 2], config.seed)
        return phi, minors2(phi), {"type": sorted(config.scroll_type or [1, 2])}
    from .scrollar import ConjectureCounterexample, NotGoneric, PlaneQuintic, goneric_pipeline
    C = as_canonical(model)
    try:
        gm = goneric_pipeline(C, config.seed)
    except (NotGoneric, PlaneQuintic, ConjectureCounterexample) as exc:
        raise Inapplicable("not_goneric", str(exc)) from None
    return gm.scroll.phi, gm.scroll.minor_ideal, {"genus": C.genus}


def cmd_lie(model, config: JobConfig) -> dict:
    from .lie import CharacteristicObstruction, NoRuling, NoSplitTorus, lie_report
    phi, ideal, meta = _scroll_of(model, config)
    try:
        out = lie_report(ideal, phi.ring, config.seed)
    except (NoSplitTorus, NoRuling, CharacteristicObstruction) as exc:
        raise Inapplicable(type(exc).__name__, str(exc)) from None
    out.update(meta)
    return out


def cmd_scroll_check(model, config: JobConfig) -> dict:
    from .scrollar import scroll_check
    phi, _, meta = _scroll_of(model, config)
    out = scroll_check(phi, config.seed)
    out.update(meta)
    return out


HANDLERS = {"betti": cmd_betti, "goneric": cmd_goneric, "gonal": cmd_gonal, "tetragonal": cmd_tetragonal,
            "radparam": cmd_radparam, "lie": cmd_lie, "scroll-check": cmd_scroll_check}


# -- driver ----------------------------------------------------------------------------------------

def _alarm(signum, frame):
    raise OutOfTime()


def run(config: JobConfig) -> tuple:
    """Exit code and the JSON-ready result."""
    try:
        model = None
        if config.input is not None or config.command not in ("lie", "scroll-check"):
            model = read_model(config)
    except InputError as exc:
        return EXIT_INPUT, {"error": "input", "message": str(exc)}
    if config.budget_minutes is not None:
        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, config.budget_minutes * 60)
    try:
        return EXIT_OK, HANDLERS[config.command](model, config)
    except Inapplicable as exc:
        out = {"error": exc.tag, "message": str(exc)}
        out.update(exc.extra)
        return EXIT_NOT_APPLICABLE, out
    except OutOfTime:
        out = {"error": "budget", "message": f"stopped after {config.budget_minutes} minutes",
               "bounds": _bounds(model) if model is not None else None}
        return EXIT_BUDGET, out
    finally:
        if config.budget_minutes is not None:
            signal.setitimer(signal.ITIMER_REAL, 0)


def render(config: JobConfig, result: dict) -> str:
    pretty = result.pop("_pretty", None)
    if config.pretty and pretty is not None:
        return pretty + "\n"
    return json.dumps(result, sort_keys=True, indent=2 if config.pretty else None) + "\n"


def parse_args(argv: Optional[List[str]] = None) -> JobConfig:
    ap = argparse.ArgumentParser(prog="gonalis", description="Betti tables, gonal maps and radical parametrizations of curves.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--in", dest="input", help="curve file")
    ap.add_argument("--field", help="override the field line, e.g. 'GF 10007' or 'QQ'")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--budget-minutes", type=float)
    ap.add_argument("--pretty", action="store_true", help="indented JSON; Betti tables in dash layout")
    ap.add_argument("--out", help="write the result here instead of stdout")
    ap.add_argument("--type", dest="scroll_type", help="scroll type for lie/scroll-check, e.g. 1,2,3")
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--precision", type=int, default=64)
    ns = ap.parse_args(argv)
    kind = [int(t) for t in ns.scroll_type.split(",")] if ns.scroll_type else None
    try:
        return JobConfig(ns.command, ns.input, ns.field, ns.seed, ns.budget_minutes, ns.pretty, ns.out, kind,
                         ns.samples, ns.precision)
    except ValueError as exc:
        ap.error(str(exc))


def main(argv: Optional[List[str]] = None) -> int:
    config = parse_args(argv)
    code, result = run(config)
    text = render(config, result)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INPUT:
        sys.stderr.write(result["message"] + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
