"""Pure-Python reference implementations of the hot loops.

Every function here has a twin with the same name and signature in
``_ckernels.pyx``.  The two must agree exactly; ``tests/test_kernels.py``
runs both on the same inputs.
"""
from __future__ import annotations

from typing import Optional, Sequence

BACKEND = "python"


def face_table(n: int, facets: Sequence[int]) -> bytearray:
    """Byte table of length ``2**n`` with 1 at every mask that is a face."""
    table = bytearray(1 << n)
    for facet in facets:
        sub = facet
        while True:
            table[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & facet
    return table


def _admissible(n: int, bound: int, nonzero: Sequence[bytes]) -> list[list[int]]:
    return [[c for c in range(bound + 1) if nonzero[i][c]] for i in range(n)]


def ideal_violation(
    is_face: bytes,
    n: int,
    a: Sequence[int],
    b: Sequence[int],
    bound: int,
    nonzero: Sequence[bytes],
) -> Optional[tuple[int, ...]]:
    """Search the box ``[0, bound]^n`` for ``c`` with ``x^c`` a non-face
    monomial whose image ``C(c, b) x^(a+c-b)`` is a nonzero face monomial.

    ``nonzero[i][c]`` says whether ``C(c, b_i)`` is nonzero in the field.
    Returns the first witness in lexicographic order, or ``None``.
    """
    values = _admissible(n, bound, nonzero)
    if any(not v for v in values):
        return None
    idx = [0] * n
    c = [v[0] for v in values]
    while True:
        src = 0
        dst = 0
        for i in range(n):
            if c[i] > 0:
                src |= 1 << i
            if a[i] + c[i] - b[i] > 0:
                dst |= 1 << i
        if not is_face[src] and is_face[dst]:
            return tuple(c)
        i = n - 1
        while i >= 0:
            idx[i] += 1
            if idx[i] < len(values[i]):
                c[i] = values[i][idx[i]]
                break
            idx[i] = 0
            c[i] = values[i][0]
            i -= 1
        if i < 0:
            return None


def count_face_box(is_face: bytes, n: int, q: int) -> int:
    """Number of exponent vectors in ``[0, q)^n`` whose support is a face."""
    total = 0
    c = [0] * n
    while True:
        mask = 0
        for i in range(n):
            if c[i]:
                mask |= 1 << i
        if is_face[mask]:
            total += 1
        i = n - 1
        while i >= 0:
            c[i] += 1
            if c[i] < q:
                break
            c[i] = 0
            i -= 1
        if i < 0:
            return total


def downsets(below: Sequence[int]) -> list[int]:
    """All down-closed subsets of a finite poset, as sorted bit masks.

    ``below[i]`` is the mask of nodes ``j <= i`` (including ``i``).
    """
    m = len(below)
    # decreasing size of principal down-set is a reverse linear extension
    order = sorted(range(m), key=lambda i: (-bin(below[i]).count("1"), i))
    out: list[int] = []

    def walk(pos: int, chosen: int, forced: int) -> None:
        if pos == m:
            out.append(chosen)
            return
        node = order[pos]
        bit = 1 << node
        if forced & bit:
            walk(pos + 1, chosen | bit, forced)
            return
        walk(pos + 1, chosen, forced)
        walk(pos + 1, chosen | bit, forced | below[node])

    walk(0, 0, 0)
    out.sort()
    return out
