"""Finitely generated abelian groups in canonical (invariant factor) form.

A group is Z^r (+) Z/d_1 (+) ... (+) Z/d_s with 2 <= d_1 | d_2 | ... | d_s.
Two groups are isomorphic iff their canonical data are equal, so group
equality below *is* the isomorphism test.  Elements carry coordinates with
respect to the canonical generators (free generators first, then one
generator per invariant factor).

Throughout, a cyclic order of 0 encodes Z (the "Z_0 = Z" convention) and
orders of 1 are trivial summands that get dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .intmatrix import IntMatrix, smith_normal_form


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division; orders here stay desk-sized."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def canonical_orders(orders: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Turn a list of cyclic orders (0 = Z) into (free_rank, invariant factors).

    Uses the (a, b) -> (gcd, lcm) exchange, which preserves the isomorphism
    class of Z_a (+) Z_b, until the divisibility chain holds.
    """
    vals = [abs(int(o)) for o in orders]
    vals = [v for v in vals if v != 1]
    n = len(vals)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                a, b = vals[i], vals[j]
                g = gcd(a, b)
                l = 0 if (a == 0 or b == 0) else (a // g) * b
                if (a, b) != (g, l):
                    vals[i], vals[j] = g, l
                    changed = True
    vals = [v for v in vals if v != 1]
    free_rank = sum(1 for v in vals if v == 0)
    torsion = tuple(v for v in vals if v != 0)
    return free_rank, torsion


@dataclass(frozen=True)
class FgGroup:
    """Canonical form of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FgGroup":
        r, t = canonical_orders(orders)
        return cls(r, t)

    @classmethod
    def trivial(cls) -> "FgGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgGroup":
        return cls.from_orders([n])

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        """Group order; 0 means infinite."""
        return 0 if self.free_rank else prod(self.torsion, start=1)

    def orders(self) -> tuple[int, ...]:
        """Cyclic orders of the canonical generators (0 for free ones)."""
        return (0,) * self.free_rank + self.torsion

    def primary_orders(self) -> tuple[int, ...]:
        """Prime-power cyclic orders (0 for free summands)."""
        out: list[int] = [0] * self.free_rank
        for d in self.torsion:
            out.extend(sorted(p ** e for p, e in _factorint(d).items()))
        return tuple(out)

    def zero(self) -> "FgElement":
        return FgElement(self, (0,) * self.free_rank, (0,) * len(self.torsion))

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> "FgElement":
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise ValueError("coordinate count mismatch")
        red = tuple(int(c) % d for c, d in zip(torsion, self.torsion))
        return FgElement(self, tuple(int(c) for c in free), red)

    def elements(self):
        """Iterate all elements; only valid for finite groups."""
        if not self.is_finite:
            raise ValueError("infinite group")
        def rec(i, acc):
            if i == len(self.torsion):
                yield self.element((), tuple(acc))
                return
            for c in range(self.torsion[i]):
                acc.append(c)
                yield from rec(i + 1, acc)
                acc.pop()
        yield from rec(0, [])

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FgElement:
    """Element of an FgGroup in canonical coordinates (torsion reduced)."""

    group: FgGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        for c, d in zip(self.torsion, self.group.torsion):
            if not 0 <= c < d:
                raise ValueError("torsion coordinate not reduced")

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def coords(self) -> tuple[int, ...]:
        return self.free + self.torsion

    def coord(self, i: int) -> int:
        r = self.group.free_rank
        return self.free[i] if i < r else self.torsion[i - r]

    def __add__(self, other: "FgElement") -> "FgElement":
        self._check(other)
        return self.group.element(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __sub__(self, other: "FgElement") -> "FgElement":
        self._check(other)
        return self.group.element(
            tuple(a - b for a, b in zip(self.free, other.free)),
            tuple(a - b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self) -> "FgElement":
        return self.group.zero() - self

    def scale(self, n: int) -> "FgElement":
        return self.group.element(tuple(n * a for a in self.free),
                                  tuple(n * a for a in self.torsion))

    def order(self) -> int:
        """Order of the element; 0 means infinite."""
        if any(self.free):
            return 0
        n = 1
        for c, d in zip(self.torsion, self.group.torsion):
            if c:
                o = d // gcd(c, d)
                n = n * o // gcd(n, o)
        return n

    def _check(self, other: "FgElement"):
        if self.group != other.group:
            raise ValueError("elements of different groups")


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the domain's canonical generators."""

    domain: FgGroup
    codomain: FgGroup
    images: tuple[FgElement, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.num_generators:
            raise ValueError("need one image per generator")
        r = self.domain.free_rank
        for d, img in zip(self.domain.torsion, self.images[r:]):
            if not img.scale(d).is_zero:
                raise ValueError("generator image order incompatible with relation")

    def __call__(self, x: FgElement) -> FgElement:
        if x.group != self.domain:
            raise ValueError("element not in the domain")
        acc = self.codomain.zero()
        for c, img in zip(x.coords(), self.images):
            if c:
                acc = acc + img.scale(c)
        return acc

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.codomain != self.domain:
            raise ValueError("composition mismatch")
        return GroupHom(inner.domain, self.codomain,
                        tuple(self(img) for img in inner.images))

    def matrix(self) -> IntMatrix:
        """Integer matrix of image coordinates, one column per domain generator."""
        rows = self.codomain.num_generators
        cols = self.domain.num_generators
        ent = [0] * (rows * cols)
        for j, img in enumerate(self.images):
            for i, c in enumerate(img.coords()):
                ent[i * cols + j] = c
        return IntMatrix(rows, cols, tuple(ent))

    def is_isomorphism(self) -> bool:
        """True iff the hom is bijective.

        Isomorphic groups have equal canonical forms, and a surjective
        endomorphism of a finitely generated abelian group is bijective, so
        equal canonical forms plus surjectivity decides it.
        """
        return self.domain == self.codomain and self.is_surjective()

    def is_surjective(self) -> bool:
        cod = self.codomain
        if cod.num_generators == 0:
            return True
        # images generate iff Z^g / (image cols + relation cols) is trivial
        rel = [0] * cod.free_rank + list(cod.torsion)
        cols = []
        for img in self.images:
            cols.append(list(img.coords()))
        for i, d in enumerate(rel):
            if d:
                col = [0] * cod.num_generators
                col[i] = d
                cols.append(col)
        m = IntMatrix.from_rows([[col[i] for col in cols] for i in range(cod.num_generators)])
        grp, _ = cokernel(m)
        return grp.is_trivial

    @classmethod
    def identity(cls, g: FgGroup) -> "GroupHom":
        imgs = []
        for i in range(g.num_generators):
            free = tuple(1 if j == i else 0 for j in range(g.free_rank))
            tor = tuple(1 if g.free_rank + j == i else 0 for j in range(len(g.torsion)))
            imgs.append(g.element(free, tor))
        return cls(g, g, tuple(imgs))

    def is_identity(self) -> bool:
        return self == GroupHom.identity(self.domain) if self.domain == self.codomain else False


@dataclass(frozen=True)
class QuotientMap:
    """Projection Z^N -> Z^N/(M Z^k) in the canonical coordinates of the quotient.

    Built from the Smith normal form u*M*v = s: the class of x corresponds to
    u*x read against the diagonal of s.
    """

    group: FgGroup
    u: IntMatrix
    diag: tuple[int, ...]  # length = N, including 1s and trailing 0s

    def __call__(self, vec: Sequence[int]) -> FgElement:
        y = self.u.apply(vec)
        free = tuple(y[i] for i, d in enumerate(self.diag) if d == 0)
        torsion = tuple(y[i] % d for i, d in enumerate(self.diag) if d >= 2)
        return self.group.element(free, torsion)


def cokernel(m: IntMatrix) -> tuple[FgGroup, QuotientMap]:
    """Z^rows / (m Z^cols) in canonical form, with the projection map."""
    snf = smith_normal_form(m)
    diag = list(snf.diagonal()) + [0] * (m.rows - min(m.rows, m.cols))
    grp = FgGroup(free_rank=sum(1 for d in diag if d == 0),
                  torsion=tuple(d for d in diag if d >= 2))
    return grp, QuotientMap(grp, snf.u, tuple(diag))


def kernel_group(m: IntMatrix) -> tuple[FgGroup, tuple[tuple[int, ...], ...]]:
    """The (free) kernel {x in Z^cols : m x = 0} with an explicit basis."""
    snf = smith_normal_form(m)
    rank = snf.rank()
    basis = tuple(tuple(snf.v[i, j] for i in range(m.cols))
                  for j in range(rank, m.cols))
    return FgGroup.free(len(basis)), basis


def _piece_order(a: int, b: int) -> int:
    # cyclic order of Z_a (x) Z_b with 0 = Z
    if a == 0 and b == 0:
        return 0
    if a == 0:
        return b
    if b == 0:
        return a
    return gcd(a, b)


@dataclass(frozen=True)
class TensorMap:
    """Bilinear map (a, b) -> a (x) b into the canonical tensor product."""

    left: FgGroup
    right: FgGroup
    group: FgGroup
    qmap: QuotientMap

    def __call__(self, a: FgElement, b: FgElement) -> FgElement:
        if a.group != self.left or b.group != self.right:
            raise ValueError("element group mismatch")
        ac, bc = a.coords(), b.coords()
        vec = [x * y for x in ac for y in bc]
        return self.qmap(vec)


def tensor(g: FgGroup, h: FgGroup) -> tuple[FgGroup, TensorMap]:
    """g (x) h, computed summand-wise, with the bilinear element map."""
    orders = [_piece_order(a, b) for a in g.orders() for b in h.orders()]
    grp, qmap = cokernel(IntMatrix.diagonal(orders))
    return grp, TensorMap(g, h, grp, qmap)


def tor(g: FgGroup, h: FgGroup) -> FgGroup:
    """Tor(g, h): torsion summands pair by gcd, free parts contribute nothing."""
    return FgGroup.from_orders(gcd(a, b) for a in g.torsion for b in h.torsion)


def ext_group(g: FgGroup, h: FgGroup) -> FgGroup:
    """Ext(g, h): Ext(Z, -) = 0, Ext(Z_m, Z) = Z_m, Ext(Z_m, Z_n) = Z_gcd."""
    orders = [d for d in g.torsion for _ in range(h.free_rank)]
    orders.extend(gcd(a, b) for a in g.torsion for b in h.torsion)
    return FgGroup.from_orders(orders)


def direct_sum(*groups: FgGroup) -> FgGroup:
    orders: list[int] = []
    for g in groups:
        orders.extend(g.orders())
    return FgGroup.from_orders(orders)


def is_quotient(g: FgGroup, h: FgGroup) -> bool:
    """True iff h is an epimorphic image of g.

    Align the two order sequences (invariant factors, then 0s for free
    summands) at the large end; each factor of h must divide its partner,
    where "divides 0" means any order and "0 divides" only 0.
    """
    gs = list(g.torsion) + [0] * g.free_rank
    hs = list(h.torsion) + [0] * h.free_rank
    if len(hs) > len(gs):
        return False
    for i in range(1, len(hs) + 1):
        e, d = hs[-i], gs[-i]
        if e == 0:
            if d != 0:
                return False
        elif d % e:
            return False
    return True
