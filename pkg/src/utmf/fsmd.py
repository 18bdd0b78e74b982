"""Cycle-level model of the eight-state scheduler that evaluates the filter
in hardware.

One call to :func:`fsmd_step` is one state visit. ``Dat1`` loops on itself
once per sorted element, so a window always takes the same path length:
Idle, 9 x Dat1, Index, Decision, OutEven or OutOdd, FinalProcess, OutFinal.
Each visit is charged ``cycle_costs[state]`` cycles (1 by default, 15 per
window). :data:`OVERLAPPED_COSTS` hides Idle and FinalProcess behind the
neighbouring states, which gives 13.
"""

import copy
import enum
import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import check_image
from .filters import IMPULSE_LUT, WINDOW_LEN, FilterParams, classify_and_correct
from .image import pad_replicate
from .sorting import snake_sort_network

REPORTED_FIRST_OUTPUT_CYCLES = 13


class FsmdState(enum.Enum):
    IDLE = "Idle"
    DAT1 = "Dat1"
    INDEX = "Index"
    DECISION = "Decision"
    OUT_EVEN = "OutEven"
    OUT_ODD = "OutOdd"
    FINAL_PROCESS = "FinalProcess"
    OUT_FINAL = "OutFinal"


S = FsmdState
TRANSITIONS = {
    S.IDLE: {S.DAT1},
    S.DAT1: {S.DAT1, S.INDEX},
    S.INDEX: {S.DECISION},
    S.DECISION: {S.OUT_EVEN, S.OUT_ODD},
    S.OUT_EVEN: {S.FINAL_PROCESS},
    S.OUT_ODD: {S.FINAL_PROCESS},
    S.FINAL_PROCESS: {S.OUT_FINAL},
    S.OUT_FINAL: {S.IDLE},
}

DEFAULT_COSTS = {state: 1 for state in FsmdState}
OVERLAPPED_COSTS = {**DEFAULT_COSTS, S.IDLE: 0, S.FINAL_PROCESS: 0}


class IllegalTransition(RuntimeError):
    pass


def _build_index_table():
    """Median positions (one-based, into the sorted window) per composition.

    Keys are ``(zeros, saturated)``. Values are ``("lut", op)`` for an
    all-extreme window, ``("odd", k)`` or ``("even", u, v)`` otherwise.
    """
    table = {}
    for zeros in range(WINDOW_LEN + 1):
        for sat in range(WINDOW_LEN + 1 - zeros):
            n = WINDOW_LEN - zeros - sat
            if n == 0:
                table[zeros, sat] = ("lut", IMPULSE_LUT[zeros])
            elif n % 2:
                table[zeros, sat] = ("odd", zeros + 1 + (n - 1) // 2)
            else:
                u = zeros + n // 2
                table[zeros, sat] = ("even", u, u + 1)
    return table


INDEX_TABLE = _build_index_table()


@dataclass(slots=True)
class Datapath:
    f: int = 0
    l: int = 0
    t_noise: int = 0
    scan: int = 0
    even_u: int | None = None
    even_v: int | None = None
    odd: int | None = None
    op: int | None = None
    sum: int = 0
    utmed: int | None = None
    center: int | None = None
    s_med: int | None = None
    out: int | None = None
    cycle: int = 0


def fsmd_step(state, dp, s, params=FilterParams(), center=None, cycle_costs=None):
    """Execute one visit of ``state``; returns ``(next_state, datapath)``.

    The input datapath is left untouched.
    """
    if state not in TRANSITIONS:
        raise IllegalTransition(f"unknown state {state!r}")
    costs = DEFAULT_COSTS if cycle_costs is None else cycle_costs
    cycle = dp.cycle + costs[state]

    if state is S.IDLE:
        return S.DAT1, Datapath(cycle=cycle)

    dp = copy.copy(dp)
    dp.cycle = cycle
    if state is S.DAT1:
        if dp.scan == 0:
            dp.f, dp.l = 1, WINDOW_LEN
        value = s[dp.scan]
        if value == 0:
            dp.f += 1
            dp.t_noise += 1
        elif value == 255:
            dp.l -= 1
            dp.t_noise += 1
        dp.scan += 1
        nxt = S.INDEX if dp.scan == WINDOW_LEN else S.DAT1
    elif state is S.INDEX:
        entry = INDEX_TABLE[dp.f - 1, WINDOW_LEN - dp.l]
        if entry[0] == "lut":
            dp.op = entry[1]
        elif entry[0] == "odd":
            dp.odd = entry[1]
        else:
            dp.even_u, dp.even_v = entry[1], entry[2]
        nxt = S.DECISION
    elif state is S.DECISION:
        if (WINDOW_LEN - dp.t_noise) % 2:
            nxt = S.OUT_ODD
        else:
            if dp.op is None:
                dp.sum = int(s[dp.even_u - 1]) + int(s[dp.even_v - 1])
            nxt = S.OUT_EVEN
    elif state is S.OUT_EVEN:
        dp.utmed = dp.op if dp.op is not None else dp.sum // 2
        nxt = S.FINAL_PROCESS
    elif state is S.OUT_ODD:
        dp.utmed = int(s[dp.odd - 1])
        nxt = S.FINAL_PROCESS
    elif state is S.FINAL_PROCESS:
        dp.center, dp.s_med = int(center), int(s[4])
        nxt = S.OUT_FINAL
    elif state is S.OUT_FINAL:
        dp.out, _ = classify_and_correct(dp.center, dp.s_med, dp.utmed, params)
        nxt = S.IDLE

    if nxt not in TRANSITIONS[state]:
        raise IllegalTransition(f"{state.value} -> {nxt.value}")
    return nxt, dp


def fsmd_run_window(window, params=FilterParams(), cycle_costs=None, trace=None):
    """Drive one window from Idle through OutFinal; returns ``(value, cycles)``.

    If ``trace`` is a list, the visited states are appended to it.
    """
    values = getattr(window, "values", window)
    if len(values) != WINDOW_LEN:
        raise ValueError(f"expected a 3x3 window, got {len(values)} values")
    s = snake_sort_network(values)
    state, dp = S.IDLE, Datapath()
    while True:
        if trace is not None:
            trace.append(state)
        done = state is S.OUT_FINAL
        state, dp = fsmd_step(state, dp, s, params, values[4], cycle_costs)
        if done:
            return dp.out, dp.cycle


@dataclass(frozen=True)
class CycleReport:
    cycles_first_output: int
    cycles_per_window: int
    windows: int
    reported_first_output: int = REPORTED_FIRST_OUTPUT_CYCLES

    @property
    def delta(self):
        return self.cycles_first_output - self.reported_first_output

    def to_text(self):
        return (
            f"cycles_first_output={self.cycles_first_output}\n"
            f"cycles_per_window={self.cycles_per_window}\n"
            f"windows={self.windows}\n"
            f"reported_first_output={self.reported_first_output}\n"
            f"delta_vs_reported={self.delta:+d}\n"
        )


def fsmd_run_image(img, params=FilterParams(), cycle_costs=None):
    """Filter ``img`` window by window through the scheduler model."""
    img = check_image(img)
    out = np.empty_like(img)
    per_window = set()
    first = None
    padded = pad_replicate(img, 1).tolist()
    height, width = img.shape
    for y, x in itertools.product(range(height), range(width)):
        window = padded[y][x : x + 3] + padded[y + 1][x : x + 3] + padded[y + 2][x : x + 3]
        value, cycles = fsmd_run_window(window, params, cycle_costs)
        out[y, x] = value
        per_window.add(cycles)
        if first is None:
            first = cycles
    if len(per_window) != 1:
        raise IllegalTransition(f"schedule length varied between windows: {sorted(per_window)}")
    return out, CycleReport(first, per_window.pop(), img.size)
