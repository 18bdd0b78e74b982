"""Snake-like shear sorting of 3x3 windows.

The window is a 3x3 mesh with cells numbered row-major::

    0 1 2
    3 4 5
    6 7 8

The network is built from three-cell sorters (three compare-exchanges each):
rows (middle row descending), columns, rows again, columns again, then one
sorter on each semi-diagonal. The result is read out in snake order (row 0
left to right, row 1 right to left, row 2 left to right).

Those five stages, 14 sorters and 42 comparators, leave the middle row
unsorted for 18 of the 512 binary inputs. Two single compare-exchanges on
adjacent snake positions of that row close the gap; :data:`SHIPPED_NETWORK`
includes them and sorts every input.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

#: mesh cell read at each snake rank (rank 0 = minimum)
SNAKE_ORDER = (0, 1, 2, 5, 4, 3, 6, 7, 8)


@dataclass(frozen=True)
class Stage:
    """One parallel stage. Each element of ``sorters`` lists mesh cells that
    receive the minimum first; a pair is a single compare-exchange, a triple
    is a three-cell sorter."""

    name: str
    sorters: tuple

    @property
    def comparator_count(self):
        return sum(1 if len(s) == 2 else 3 for s in self.sorters)


_ROWS = Stage("rows", ((0, 1, 2), (5, 4, 3), (6, 7, 8)))
_COLUMNS = Stage("columns", ((0, 3, 6), (1, 4, 7), (2, 5, 8)))
_SEMI_DIAGONALS = Stage(
    "semi-diagonals",
    (
        (1, 2, 5),  # upper: snake ranks 1, 2, 3
        (3, 6, 7),  # lower: snake ranks 5, 6, 7
    ),
)

SHEAR_NETWORK = (_ROWS, _COLUMNS, _ROWS, _COLUMNS, _SEMI_DIAGONALS)
CLEANUP_STAGES = (
    Stage("cleanup ranks 3-4", ((SNAKE_ORDER[3], SNAKE_ORDER[4]),)),
    Stage("cleanup ranks 4-5", ((SNAKE_ORDER[4], SNAKE_ORDER[5]),)),
)
SHIPPED_NETWORK = SHEAR_NETWORK + CLEANUP_STAGES


def sort3(a, b, c):
    """Three-cell sorter: ``(min, mid, max)`` using three compare-exchanges."""
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    return a, b, c


def _comparators(sorter):
    if len(sorter) == 2:
        return (sorter,)
    a, b, c = sorter
    return ((a, b), (b, c), (a, b))


def comparator_sequence(network=SHIPPED_NETWORK):
    """Flatten ``network`` into its fixed list of (low, high) cell pairs."""
    return [pair for stage in network for s in stage.sorters for pair in _comparators(s)]


def apply_network(cells, network=SHIPPED_NETWORK):
    """Run ``network`` on nine lanes and return them in snake order.

    ``cells`` may be a length-9 sequence of scalars or an array whose first
    axis has length 9; arrays are processed element-wise in one pass.
    """
    if isinstance(cells, np.ndarray):
        v = list(cells)
        for lo, hi in comparator_sequence(network):
            v[lo], v[hi] = np.minimum(v[lo], v[hi]), np.maximum(v[lo], v[hi])
        return np.stack([v[i] for i in SNAKE_ORDER])
    v = list(cells)
    if len(v) != 9:
        raise ValueError(f"the network sorts 9 values, got {len(v)}")
    for lo, hi in comparator_sequence(network):
        if v[lo] > v[hi]:
            v[lo], v[hi] = v[hi], v[lo]
    return tuple(v[i] for i in SNAKE_ORDER)


def snake_sort_network(window):
    """Sort a 3x3 window (a :class:`~utmf.image.Window` or 9 values) ascending."""
    values = getattr(window, "values", window)
    return apply_network(tuple(int(x) for x in values))


def reference_sort(window):
    """Oracle: Python's built-in sort."""
    values = getattr(window, "values", window)
    if len(values) != 9:
        raise ValueError(f"expected 9 values, got {len(values)}")
    return tuple(sorted(int(x) for x in values))


@dataclass
class NetworkReport:
    comparator_count: int
    stage_count: int
    failures: list = field(default_factory=list)
    binary_failures: int = 0
    permutation_failures: int = 0
    supplementary_stages: int = 0

    @property
    def ok(self):
        return not self.failures

    def to_text(self, max_listed=50):
        lines = [
            f"comparator_count={self.comparator_count}",
            f"stage_count={self.stage_count}",
            f"supplementary_stages={self.supplementary_stages}",
            f"binary_inputs_checked=512",
            f"binary_failures={self.binary_failures}",
            f"permutations_checked=362880",
            f"permutation_failures={self.permutation_failures}",
            f"status={'PASS' if self.ok else 'FAIL'}",
        ]
        for vec in self.failures[:max_listed]:
            lines.append("failing_input=" + " ".join(str(x) for x in vec))
        if len(self.failures) > max_listed:
            lines.append(f"failing_inputs_not_listed={len(self.failures) - max_listed}")
        return "\n".join(lines) + "\n"


def _failing_rows(inputs, network):
    out = apply_network(inputs.T.copy(), network).T
    bad = np.any(out[:, 1:] < out[:, :-1], axis=1)
    return inputs[bad]


def verify_network(network=SHIPPED_NETWORK):
    """Check ``network`` exhaustively on all 512 binary inputs and all 9!
    permutations of nine distinct values."""
    binary = np.array(list(itertools.product((0, 1), repeat=9)), dtype=np.int16)
    perms = np.array(list(itertools.permutations(range(9))), dtype=np.int16)
    bin_fail = _failing_rows(binary, network)
    perm_fail = _failing_rows(perms, network)
    return NetworkReport(
        comparator_count=len(comparator_sequence(network)),
        stage_count=len(network),
        failures=[tuple(int(x) for x in row) for row in np.concatenate([bin_fail, perm_fail])],
        binary_failures=len(bin_fail),
        permutation_failures=len(perm_fail),
        supplementary_stages=max(0, len(network) - len(SHEAR_NETWORK)),
    )
