"""Parameter settings, 1-D/2-D sweeps and their CSV form."""

from __future__ import annotations

import ast
import io
import math
import operator
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, TextIO

import numpy as np

from . import engine
from .model import CouplingConfig

SETTING_KEYS = ("n", "x", "y", "xi", "yi", "i", "gamma", "phi12", "tau12", "markovian", "xs", "ys")
AXIS_KEYS = ("delta", "phi12", "xi", "yi", "gamma", "tau12")


class UsageError(ValueError):
    """Bad user input (maps to exit code 2 on the command line)."""


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_number(text: str) -> float:
    """Float literal or simple arithmetic involving ``pi``, e.g. ``2*pi/5``."""

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise UsageError(f"cannot parse number {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"non-finite number {text!r}")
    return value


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"cannot parse boolean {text!r}")


def parse_setting(key: str, value: str):
    key = key.strip()
    if key not in SETTING_KEYS:
        raise UsageError(f"unknown setting {key!r}; expected one of {', '.join(SETTING_KEYS)}")
    if key in ("n", "i"):
        v = parse_number(value)
        if v != int(v):
            raise UsageError(f"{key} must be an integer, got {value!r}")
        return int(v)
    if key == "markovian":
        return _parse_bool(value)
    if key in ("xs", "ys"):
        return tuple(parse_number(v) for v in value.split(",") if v.strip())
    return parse_number(value)


def read_settings(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"line {lineno}: expected key=value, got {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = parse_setting(k, v)
    return out


def build_config(settings: Mapping) -> CouplingConfig:
    """Configuration from flat settings.

    Either ``xs``/``ys`` lists, or ``n`` points of ``(x, y)`` with point ``i``
    (default: the last) replaced by ``(xi, yi)``.  ``markovian`` defaults to
    true unless a nonzero ``tau12`` is given.
    """
    s = dict(settings)
    tau = float(s.get("tau12", 0.0))
    markovian = s.get("markovian", tau == 0.0)
    common = dict(
        gamma=float(s.get("gamma", 0.0)),
        phi12=float(s.get("phi12", 0.0)),
        tau12=tau,
        markovian=markovian,
    )
    try:
        if "xs" in s or "ys" in s:
            xs = s.get("xs") or s.get("ys")
            ys = s.get("ys") or s.get("xs")
            cfg = CouplingConfig.from_arrays(list(xs), list(ys), **common)
        else:
            n = int(s.get("n", 1))
            x = float(s.get("x", 1.0))
            y = float(s.get("y", x))
            xs, ys = [x] * n, [y] * n
            i = int(s.get("i", n))
            if not 1 <= i <= n:
                raise UsageError(f"i={i} outside 1..{n}")
            xs[i - 1] = float(s.get("xi", x))
            ys[i - 1] = float(s.get("yi", y))
            cfg = CouplingConfig.from_arrays(xs, ys, **common)
    except UsageError:
        raise
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    return cfg


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise UsageError(f"axis {self.name!r} needs count >= 2, got {self.count}")
        if self.name not in AXIS_KEYS:
            raise UsageError(f"cannot sweep {self.name!r}; expected one of {', '.join(AXIS_KEYS)}")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    @classmethod
    def parse(cls, spec: str, name: str | None = None) -> "Axis":
        """``START:STOP:COUNT``, optionally prefixed by ``KEY=``."""
        if "=" in spec:
            name, spec = spec.split("=", 1)
        if name is None:
            raise UsageError(f"axis spec {spec!r} needs a KEY= prefix")
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"axis range must be START:STOP:COUNT, got {spec!r}")
        start, stop = parse_number(parts[0]), parse_number(parts[1])
        try:
            count = int(parts[2])
        except ValueError as exc:
            raise UsageError(f"axis count must be an integer, got {parts[2]!r}") from exc
        if not stop > start:
            raise UsageError(f"axis range needs STOP > START, got {spec!r}")
        return cls(name.strip(), start, stop, count)


@dataclass
class SweepGrid:
    """Sweep result; rows run over ``axis1`` fastest, then ``axis2``."""

    axis1: Axis
    axis2: Axis | None
    columns: list[str]
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = self.axis1.count * (self.axis2.count if self.axis2 else 1)
        if self.rows.shape != (expected, len(self.columns)):
            raise ValueError(f"rows have shape {self.rows.shape}, expected {(expected, len(self.columns))}")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self, fh: TextIO | None = None) -> str | None:
        buf = fh if fh is not None else io.StringIO()
        write_csv(buf, self.columns, self.rows)
        return None if fh is not None else buf.getvalue()

    def to_table(self) -> str:
        return format_table(self.columns, self.rows)

    @classmethod
    def from_csv(cls, text: str, n_axes: int = 1) -> "SweepGrid":
        columns, rows = read_csv(text)
        axes = []
        for k in range(n_axes):
            vals = list(dict.fromkeys(rows[:, k].tolist()))
            axes.append(Axis(columns[k], vals[0], vals[-1], len(vals)))
        return cls(axes[0], axes[1] if n_axes > 1 else None, columns, rows)


def format_table(columns: Iterable[str], rows: np.ndarray) -> str:
    columns = list(columns)
    width = max(12, *(len(c) for c in columns))
    lines = ["  ".join(f"{c:>{width}}" for c in columns)]
    for row in rows:
        lines.append("  ".join(f"{float(v):>{width}.6g}" for v in row))
    return "\n".join(lines) + "\n"


def format_float(v: float) -> str:
    return f"{v:.17g}"


def write_csv(fh: TextIO, columns: Iterable[str], rows: np.ndarray) -> None:
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(format_float(float(v)) for v in row) + "\n")


def read_csv(text: str) -> tuple[list[str], np.ndarray]:
    lines = [ln for ln in text.split("\n") if ln]
    columns = lines[0].split(",")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]], dtype=float)
    return columns, rows.reshape(len(lines) - 1, len(columns))


def thread_count() -> int:
    """Worker threads for sweeps, capped by ``CHIRALWG_THREADS``."""
    n = os.cpu_count() or 1
    cap = os.environ.get("CHIRALWG_THREADS")
    if cap:
        try:
            n = min(n, max(int(cap), 1))
        except ValueError as exc:
            raise UsageError(f"CHIRALWG_THREADS must be an integer, got {cap!r}") from exc
    return n


def _check_observables(observables: Iterable[str]) -> list[str]:
    obs = list(observables)
    if not obs:
        raise UsageError("no observables requested")
    for name in obs:
        if engine.ALIASES.get(name, name) not in engine.OBSERVABLES:
            raise UsageError(f"unknown observable {name!r}; known: {', '.join(engine.OBSERVABLES)}")
    return obs


def _evaluate_line(settings: dict, axis: Axis, observables: list[str], delta: float, relative: bool) -> np.ndarray:
    """Observables along one axis with every other setting fixed; shape (count, len(obs))."""
    if axis.name == "delta":
        cfg = build_config(settings)
        deltas = axis.values
        if relative:
            deltas = deltas + engine.rates(cfg, 0.0).lamb_shift
        s = engine.spectrum(cfg, deltas)
        return np.column_stack([engine.observable(s, o) for o in observables])
    out = np.empty((axis.count, len(observables)))
    for k, v in enumerate(axis.values):
        cfg = build_config({**settings, axis.name: float(v)})
        d = delta + (engine.rates(cfg, 0.0).lamb_shift if relative else 0.0)
        s = engine.spectrum(cfg, [d])
        out[k] = [engine.observable(s, o)[0] for o in observables]
    return out


def run_sweep(
    settings: Mapping,
    axis1: Axis,
    observables: Iterable[str],
    axis2: Axis | None = None,
    delta: float = 0.0,
    relative: bool = False,
    threads: int | None = None,
) -> SweepGrid:
    """Evaluate observables on a 1-D or 2-D grid of settings.

    ``delta`` fixes the detuning when neither axis is ``delta``.  With
    ``relative`` the detuning is measured from the Lamb shift (evaluated at
    zero detuning) of each configuration.
    """
    obs = _check_observables(observables)
    if axis2 is not None and axis2.name == axis1.name:
        raise UsageError("the two sweep axes must differ")
    base = dict(settings)
    build_config(base)  # fail early on a bad base configuration
    if axis2 is None:
        block = _evaluate_line(base, axis1, obs, delta, relative)
        rows = np.column_stack([axis1.values, block])
        return SweepGrid(axis1, None, [axis1.name, *obs], rows)

    def line(v2: float) -> np.ndarray:
        settings2 = dict(base)
        d = delta
        if axis2.name == "delta":
            d = float(v2)
        else:
            settings2[axis2.name] = float(v2)
        block = _evaluate_line(settings2, axis1, obs, d, relative)
        return np.column_stack([axis1.values, np.full(axis1.count, v2), block])

    workers = threads or thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(line, axis2.values))
    else:
        blocks = [line(v) for v in axis2.values]
    return SweepGrid(axis1, axis2, [axis1.name, axis2.name, *obs], np.vstack(blocks))
