"""Single shift-of-finite-type groupoid invariants.

For an irreducible, non-permutation adjacency matrix A the groupoid
invariants are exact integer-linear-algebra data:

  * H_0 = K_0 = coker(id - A^t) on Z^N  (the Bowen-Franks group of A^t),
  * H_1 = K_1 = ker(id - A^t), a free group,
  * the unit class u_A = class of (1, ..., 1) in H_0,
  * sgn det(id - A),
  * the full-group abelianization (H_0 (x) Z/2) (+) H_1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .fggroup import FgElement, FgGroup, direct_sum, cokernel, kernel_group, tensor
from .graded import GradedGroups
from .intmatrix import IntMatrix


@dataclass(frozen=True)
class SftMatrix:
    """A validated SFT adjacency matrix: square, nonnegative, irreducible,
    not a permutation matrix."""

    a: IntMatrix

    @property
    def size(self) -> int:
        return self.a.rows


def _as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a)


def validate(a, factor_index: int | None = None) -> SftMatrix:
    """Check the SFT admissibility conditions, naming the first that fails."""
    m = _as_matrix(a)
    loc = "" if factor_index is None else f"factor {factor_index}: "
    if not m.is_square or m.rows == 0:
        raise errors.NotSquare(f"{loc}matrix must be square and nonempty", factor_index)
    if any(x < 0 for x in m.entries):
        raise errors.NegativeEntry(f"{loc}matrix has a negative entry", factor_index)
    if not _irreducible(m):
        raise errors.Reducible(f"{loc}matrix is not irreducible", factor_index)
    if _is_permutation(m):
        raise errors.PermutationMatrix(f"{loc}matrix is a permutation matrix", factor_index)
    return SftMatrix(m)


def _irreducible(m: IntMatrix) -> bool:
    # every ordered vertex pair must be joined by a path of length >= 1;
    # Warshall closure seeded with the edges computes exactly that
    n = m.rows
    reach = [[m[i, j] > 0 for j in range(n)] for i in range(n)]
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return all(reach[i][j] for i in range(n) for j in range(n))


def _is_permutation(m: IntMatrix) -> bool:
    n = m.rows
    for i in range(n):
        if sum(m.row(i)) != 1 or any(x not in (0, 1) for x in m.row(i)):
            return False
    return all(sum(m[i, j] for i in range(n)) == 1 for j in range(n))


@dataclass(frozen=True)
class SftInvariants:
    bf: FgGroup
    unit: FgElement
    det_sign: int
    homology: GradedGroups
    k0: FgGroup
    k1: FgGroup


def invariants(a: SftMatrix) -> SftInvariants:
    m = a.a
    n = m.rows
    pres = IntMatrix.identity(n) - m.transpose()
    bf, qmap = cokernel(pres)
    unit = qmap((1,) * n)
    det = (IntMatrix.identity(n) - m).det()
    h1, _ = kernel_group(pres)
    homology = GradedGroups({0: bf, 1: h1}, unit)
    return SftInvariants(
        bf=bf,
        unit=unit,
        det_sign=(det > 0) - (det < 0),
        homology=homology,
        k0=bf,
        k1=h1,
    )


def det_id_minus(a: SftMatrix) -> int:
    """det(id - A), exact."""
    return (IntMatrix.identity(a.size) - a.a).det()


def is_primitive(a: SftMatrix) -> bool:
    """True iff some power of A is entrywise positive.

    By Wielandt's bound it is enough to look at exponents up to
    (N-1)^2 + 1, and support arithmetic avoids big-integer growth.
    """
    n = a.size
    base = [[a.a[i, j] > 0 for j in range(n)] for i in range(n)]
    power = [row[:] for row in base]
    for _ in range((n - 1) ** 2 + 1):
        if all(all(row) for row in power):
            return True
        power = [[any(power[i][k] and base[k][j] for k in range(n))
                  for j in range(n)] for i in range(n)]
    return False


def sft_abelianization(a: SftMatrix) -> FgGroup:
    """Abelianization of the topological full group: (H_0 (x) Z/2) (+) H_1."""
    inv = invariants(a)
    halved, _ = tensor(inv.bf, FgGroup.cyclic(2))
    return direct_sum(halved, inv.k1)


def companion_matrix(k: int, r: int) -> SftMatrix:
    """The r x r matrix with k in the upper-right corner and a subdiagonal of
    ones; its full group is the Higman-Thompson group V_{k,r}."""
    if k < 2 or r < 1:
        raise ValueError("need k >= 2 and r >= 1")
    rows = [[0] * r for _ in range(r)]
    rows[0][r - 1] = k
    for i in range(1, r):
        rows[i][i - 1] = 1
    return validate(rows)


def thompson_factor_list(n: int, k: int, r: int) -> list[SftMatrix]:
    """Factor list whose product groupoid has full group nV_{k,r}."""
    if n < 1:
        raise ValueError("need n >= 1")
    return [companion_matrix(k, r)] + [companion_matrix(k, 1) for _ in range(n - 1)]
