"""Dense d-dimensional (0,1)-matrices of order n.

Indices are 0-based tuples in the Python API. The text formats and the CLI
use 1-based coordinates.
"""
from __future__ import annotations

import itertools
import math
import os
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardError, ShapeError

Index = tuple  # tuple[int, ...] of length d

DEFAULT_CANONICAL_GUARD = 200_000


class BinaryTensor:
    """Immutable d-dimensional (0,1)-array with every side of length n."""

    __slots__ = ("_a", "_hash")

    def __init__(self, cells):
        a = np.array(cells, dtype=np.int64)
        if a.ndim < 1:
            raise ShapeError("tensor must have dimension >= 1")
        n = a.shape[0]
        if any(s != n for s in a.shape):
            raise ShapeError(f"all sides must be equal, got shape {a.shape}")
        if n < 1:
            raise ShapeError("order must be >= 1")
        if a.size and not np.isin(a, (0, 1)).all():
            raise ShapeError("cells must be 0 or 1")
        a = a.astype(np.uint8)
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def zeros(cls, d: int, n: int) -> "BinaryTensor":
        return cls(np.zeros((n,) * d, dtype=np.uint8))

    @classmethod
    def ones(cls, d: int, n: int) -> "BinaryTensor":
        return cls(np.ones((n,) * d, dtype=np.uint8))

    @classmethod
    def from_support(cls, d: int, n: int, cells: Iterable[Sequence[int]]) -> "BinaryTensor":
        a = np.zeros((n,) * d, dtype=np.uint8)
        for c in cells:
            a[tuple(c)] = 1
        return cls(a)

    @classmethod
    def from_bits(cls, d: int, n: int, bits: Sequence[int]) -> "BinaryTensor":
        """Build from n**d values, last coordinate varying fastest."""
        if len(bits) != n ** d:
            raise ShapeError(f"expected {n ** d} values, got {len(bits)}")
        return cls(np.array(bits, dtype=np.uint8).reshape((n,) * d))

    @property
    def d(self) -> int:
        return self._a.ndim

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __getitem__(self, index) -> int:
        return int(self._a[tuple(index)])

    def bits(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.reshape(-1))

    def support(self) -> list[Index]:
        return [tuple(int(x) for x in c) for c in np.argwhere(self._a)]

    def zero_cells(self) -> list[Index]:
        return [tuple(int(x) for x in c) for c in np.argwhere(self._a == 0)]

    def count(self) -> int:
        return int(self._a.sum())

    def indices(self) -> Iterable[Index]:
        return itertools.product(range(self.n), repeat=self.d)

    def with_cell(self, index, value: int = 1) -> "BinaryTensor":
        a = self._a.copy()
        a[tuple(index)] = value
        return BinaryTensor(a)

    def transpose(self, axes: Sequence[int]) -> "BinaryTensor":
        return BinaryTensor(np.transpose(self._a, tuple(axes)))

    def permute_positions(self, direction: int, order: Sequence[int]) -> "BinaryTensor":
        """Reorder the hyperplanes of one direction: new position j is old order[j]."""
        return BinaryTensor(np.take(self._a, list(order), axis=direction))

    def contains(self, other: "BinaryTensor") -> bool:
        """True iff supp(other) is a subset of supp(self)."""
        _same_shape(self, other)
        return bool((other._a <= self._a).all())

    def __eq__(self, other):
        if not isinstance(other, BinaryTensor):
            return NotImplemented
        return self._a.shape == other._a.shape and bool((self._a == other._a).all())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self):
        return f"BinaryTensor(d={self.d}, n={self.n}, bits={''.join(map(str, self.bits()))})"


def _same_shape(a: BinaryTensor, b: BinaryTensor):
    if a.array.shape != b.array.shape:
        raise ShapeError(f"shape mismatch: {a.array.shape} vs {b.array.shape}")


def _check_direction(A: BinaryTensor, direction: int, position: int | None = None):
    if not 0 <= direction < A.d:
        raise ShapeError(f"direction {direction} out of range for d={A.d}")
    if position is not None and not 0 <= position < A.n:
        raise ShapeError(f"position {position} out of range for n={A.n}")


def check_index(A: BinaryTensor, index) -> Index:
    index = tuple(int(x) for x in index)
    if len(index) != A.d or any(not 0 <= x < A.n for x in index):
        raise ShapeError(f"index {index} invalid for d={A.d}, n={A.n}")
    return index


def slice_hyperplane(A: BinaryTensor, direction: int, position: int) -> BinaryTensor:
    """The (d-1)-dimensional hyperplane fixing coordinate `direction` to `position`."""
    if A.d < 2:
        raise ShapeError("cannot slice a 1-dimensional tensor")
    _check_direction(A, direction, position)
    return BinaryTensor(np.take(A.array, position, axis=direction))


def delete_around(A: BinaryTensor, index) -> BinaryTensor:
    """Order-(n-1) submatrix obtained by deleting every hyperplane through `index`."""
    if A.n < 2:
        raise ShapeError("delete_around needs order n >= 2")
    index = check_index(A, index)
    a = A.array
    for axis, pos in enumerate(index):
        a = np.delete(a, pos, axis=axis)
    return BinaryTensor(a)


def lift_index(index, removed) -> Index:
    """Map an index of delete_around(A, removed) back to the index of A."""
    return tuple(x + (1 if x >= r else 0) for x, r in zip(index, removed))


def antipode(index) -> Index:
    return tuple(1 - x for x in index)


def is_antipodal(A: BinaryTensor) -> bool:
    if A.n != 2:
        raise ShapeError("antipodality is defined for order 2 only")
    a = A.array
    return bool((a != a[(slice(None, None, -1),) * A.d]).all())


def is_stepped(A: BinaryTensor) -> bool:
    """Hyperplanes of every direction weakly decrease as the position grows."""
    a = A.array.astype(np.int8)
    return all(bool((np.diff(a, axis=i) <= 0).all()) for i in range(A.d))


def stepped_form(A: BinaryTensor) -> BinaryTensor:
    """Sort hyperplanes of each direction by their number of ones, largest first.

    The result is stepped exactly when A is equivalent to a stepped tensor.
    """
    a = A.array
    for i in range(A.d):
        counts = [int(np.take(a, j, axis=i).sum()) for j in range(A.n)]
        order = sorted(range(A.n), key=lambda j: -counts[j])
        a = np.take(a, order, axis=i)
    return BinaryTensor(a)


def _guard_from_env(default: int) -> int:
    value = os.environ.get("POLYPLEX_GUARD")
    return int(value) if value else default


def _hyperplane_labels(a: np.ndarray) -> list[list[int]]:
    """Equivariant colour refinement of hyperplanes.

    Starts from the number of ones per hyperplane and refines by the multiset
    of label-profiles of the support cells each hyperplane contains.
    """
    d, n = a.ndim, a.shape[0]
    labels = [[int(np.take(a, j, axis=i).sum()) for j in range(n)] for i in range(d)]
    support = [tuple(int(x) for x in c) for c in np.argwhere(a)]
    distinct = len({x for row in labels for x in row})
    while True:
        plane_cells: dict = {}
        for c in support:
            profile = tuple(sorted(labels[i][c[i]] for i in range(d)))
            for i in range(d):
                plane_cells.setdefault((i, c[i]), []).append(profile)
        raw = [
            [(labels[i][j], tuple(sorted(plane_cells.get((i, j), ())))) for j in range(n)]
            for i in range(d)
        ]
        ranks = {v: r for r, v in enumerate(sorted({x for row in raw for x in row}))}
        labels = [[ranks[x] for x in row] for row in raw]
        if len(ranks) == distinct:
            return labels
        distinct = len(ranks)


def _tie_orders(a: np.ndarray, axis: int, labels: list[int]) -> list[tuple[int, ...]]:
    """All position orders sorted by label, ties arranged every distinct way."""
    n = a.shape[axis]
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(labels[j], []).append(j)
    per_group = []
    for lab in sorted(groups):
        members = groups[lab]
        if len(members) == 1:
            per_group.append([tuple(members)])
            continue
        # identical hyperplanes are interchangeable; arrange content classes only
        content: dict[bytes, list[int]] = {}
        for j in members:
            content.setdefault(np.take(a, j, axis=axis).tobytes(), []).append(j)
        cls_of = {}
        for k, key in enumerate(sorted(content)):
            for j in content[key]:
                cls_of[j] = k
        reps = {}
        for key_idx, key in enumerate(sorted(content)):
            reps[key_idx] = list(content[key])
        arrangements = []
        for pattern in sorted(set(itertools.permutations([cls_of[j] for j in members]))):
            pools = {k: list(v) for k, v in reps.items()}
            arrangements.append(tuple(pools[k].pop(0) for k in pattern))
        per_group.append(arrangements)
    return [tuple(itertools.chain.from_iterable(p)) for p in itertools.product(*per_group)]


def canonical_key(A: BinaryTensor, guard: int | None = None) -> bytes:
    """Canonical flattened bit-string of the equivalence class of A.

    Two tensors are equivalent (hyperplane permutations within directions plus
    direction permutations) iff their keys are equal.
    """
    limit = _guard_from_env(DEFAULT_CANONICAL_GUARD) if guard is None else guard
    a = A.array
    d, n = A.d, A.n
    if n == 1 or d == 1:
        if d == 1:
            return bytes(sorted(a.tobytes()))
        return a.tobytes()
    labels = _hyperplane_labels(a)
    dir_label = [tuple(sorted(labels[i])) for i in range(d)]
    dir_groups: dict = {}
    for i in range(d):
        dir_groups.setdefault(dir_label[i], []).append(i)
    dir_orders = [
        tuple(itertools.chain.from_iterable(p))
        for p in itertools.product(
            *[list(itertools.permutations(dir_groups[k])) for k in sorted(dir_groups)]
        )
    ]
    pos_orders = [_tie_orders(a, i, labels[i]) for i in range(d)]
    total = len(dir_orders) * math.prod(len(p) for p in pos_orders)
    if total > limit:
        raise GuardError(f"canonical form needs {total} candidates, guard is {limit}")
    best = None
    for orders in itertools.product(*pos_orders):
        b = a[np.ix_(*orders)]
        for perm in dir_orders:
            key = np.transpose(b, perm).tobytes()
            if best is None or key < best:
                best = key
    return best


def canonical_form(A: BinaryTensor, guard: int | None = None) -> BinaryTensor:
    key = canonical_key(A, guard)
    if A.d == 1:
        return BinaryTensor(np.frombuffer(key, dtype=np.uint8))
    return BinaryTensor(np.frombuffer(key, dtype=np.uint8).reshape((A.n,) * A.d))


def equivalent(A: BinaryTensor, B: BinaryTensor) -> bool:
    return A.array.shape == B.array.shape and canonical_key(A) == canonical_key(B)


def random_group_element(A: BinaryTensor, rng) -> BinaryTensor:
    """Apply a uniformly random equivalence (for tests and sweeps)."""
    a = A.array
    for i in range(A.d):
        a = np.take(a, rng.permutation(A.n), axis=i)
    return BinaryTensor(np.transpose(a, rng.permutation(A.d)))
