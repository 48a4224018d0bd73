"""Prefix-exchange tables: concrete elements of the groups W_{n,k}.

The underlying space is Z x N where Z is a product of n full shifts, the
d-th over the alphabet {0, ..., k(d)-1}.  An element is stored as a finite
table of (source brick, target brick) pairs together with an eventual index
translation: a brick is a product of cylinder sets (one finite word per
coordinate) at a single index, a point (w.y, j) inside a source brick maps to
the matching target brick with the same tails y appended, and points with
index beyond the bound translate by the offset.

Every generator of W_{n,k} has this shape and the shape is closed under
composition and inverse, so equality of group words is decidable with finite
data.  Well-formedness (source and target bricks each partition their index
range, checked with exact rational masses) is enforced on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import BoundExceeded, IncompatibleParameters

MAX_WORD_DEPTH = 64


@dataclass(frozen=True)
class Brick:
    """Product cylinder at one index: one finite word per coordinate."""

    words: tuple[tuple[int, ...], ...]
    index: int

    def extend(self, tails) -> "Brick":
        return Brick(tuple(w + t for w, t in zip(self.words, tails)), self.index)

    def mass(self, arities) -> Fraction:
        m = Fraction(1)
        for w, k in zip(self.words, arities):
            m /= Fraction(k) ** len(w)
        return m


def _is_prefix(a, b) -> bool:
    return len(a) <= len(b) and b[:len(a)] == a


def _empty_words(n):
    return ((),) * n


@dataclass(frozen=True)
class TableElement:
    """A homeomorphism of Z x N given by a brick table plus index translation."""

    arities: tuple[int, ...]
    bound: int
    offset: int
    table: tuple[tuple[Brick, Brick], ...]

    def __post_init__(self):
        n = len(self.arities)
        if any(k < 2 for k in self.arities):
            raise ValueError("all arities must be >= 2")
        if self.bound < 0 or self.bound + self.offset < 0:
            raise ValueError("bound and bound+offset must be nonnegative")
        for src, dst in self.table:
            for brick in (src, dst):
                if len(brick.words) != n:
                    raise ValueError("brick dimension mismatch")
                for w, k in zip(brick.words, self.arities):
                    if len(w) > MAX_WORD_DEPTH:
                        raise BoundExceeded("brick word exceeds refinement depth cap")
                    if any(not 0 <= a < k for a in w):
                        raise ValueError("letter outside alphabet")
        self._check_partition([s for s, _ in self.table], self.bound, "source")
        self._check_partition([t for _, t in self.table], self.bound + self.offset, "target")

    def _check_partition(self, bricks, top, side):
        by_index: dict[int, list[Brick]] = {}
        for b in bricks:
            if not 1 <= b.index <= top:
                raise ValueError(f"{side} brick index {b.index} outside 1..{top}")
            by_index.setdefault(b.index, []).append(b)
        if set(by_index) != set(range(1, top + 1)):
            raise ValueError(f"{side} bricks do not touch every index in 1..{top}")
        for j, bs in by_index.items():
            total = Fraction(0)
            for i, b in enumerate(bs):
                total += b.mass(self.arities)
                for c in bs[i + 1:]:
                    if all(_is_prefix(x, y) or _is_prefix(y, x)
                           for x, y in zip(b.words, c.words)):
                        raise ValueError(f"overlapping {side} bricks at index {j}")
            if total != 1:
                raise ValueError(f"{side} bricks at index {j} have mass {total} != 1")

    @property
    def dimension(self) -> int:
        return len(self.arities)

    def apply(self, words, index: int):
        """Image of the point (words..., index); words must be long enough to
        select a unique source brick."""
        if index > self.bound:
            return tuple(tuple(w) for w in words), index + self.offset
        for src, dst in self.table:
            if src.index != index:
                continue
            if all(_is_prefix(sw, tuple(w)) for sw, w in zip(src.words, words)):
                tails = tuple(tuple(w)[len(sw):] for sw, w in zip(src.words, words))
                out = dst.extend(tails)
                return out.words, out.index
        raise ValueError("point words too short to select a source brick")

    def is_identity(self) -> bool:
        return self.offset == 0 and all(s == t for s, t in self.table)

    def fixes_above(self, r: int) -> bool:
        """True iff every point with index > r is fixed (the index-block test)."""
        if self.offset != 0:
            return False
        for s, t in self.table:
            if s.index > r and s != t:
                return False
            if s.index <= r and t.index > r:
                return False
        return True


def identity(arities) -> TableElement:
    return TableElement(tuple(arities), 0, 0, ())


def _lifted_entries(e: TableElement, new_bound: int):
    ents = list(e.table)
    empty = _empty_words(e.dimension)
    for j in range(e.bound + 1, new_bound + 1):
        ents.append((Brick(empty, j), Brick(empty, j + e.offset)))
    return ents


def compose(f: TableElement, g: TableElement) -> TableElement:
    """f after g."""
    if f.arities != g.arities:
        raise IncompatibleParameters("arity data mismatch")
    bound = max(g.bound, f.bound - g.offset, 0)
    out = []
    f_by_index: dict[int, list[tuple[Brick, Brick]]] = {}
    for ent in f.table:
        f_by_index.setdefault(ent[0].index, []).append(ent)
    for src, mid in _lifted_entries(g, bound):
        if mid.index > f.bound:
            out.append((src, Brick(mid.words, mid.index + f.offset)))
            continue
        for fsrc, fdst in f_by_index.get(mid.index, ()):
            src_tails, dst_tails = [], []
            compatible = True
            for wm, wf in zip(mid.words, fsrc.words):
                if _is_prefix(wm, wf):
                    src_tails.append(wf[len(wm):])
                    dst_tails.append(())
                elif _is_prefix(wf, wm):
                    src_tails.append(())
                    dst_tails.append(wm[len(wf):])
                else:
                    compatible = False
                    break
            if compatible:
                out.append((src.extend(src_tails), fdst.extend(dst_tails)))
    return TableElement(f.arities, bound, f.offset + g.offset, tuple(out))


def inverse(f: TableElement) -> TableElement:
    return TableElement(f.arities, f.bound + f.offset, -f.offset,
                        tuple((t, s) for s, t in f.table))


def equal(f: TableElement, g: TableElement) -> bool:
    """True iff f and g define the same homeomorphism."""
    if f.arities != g.arities:
        raise IncompatibleParameters("arity data mismatch")
    if f.offset != g.offset:
        return False
    return compose(f, inverse(g)).is_identity()


def compose_all(elems) -> TableElement:
    """Product of a group word, rightmost factor acting first."""
    elems = list(elems)
    if not elems:
        raise ValueError("empty word")
    acc = elems[-1]
    for e in reversed(elems[:-1]):
        acc = compose(e, acc)
    return acc


def gen_s(i: int, d: int, arities) -> TableElement:
    """The splitting generator of coordinate d at index i.

    Identity below i; at index i it consumes the first letter a of coordinate
    d and moves the point to index i+a; above i it translates by k(d)-1.
    """
    arities = tuple(arities)
    n = len(arities)
    if not 1 <= d <= n:
        raise ValueError("coordinate out of range")
    if i < 1:
        raise ValueError("index must be >= 1")
    k = arities[d - 1]
    empty = _empty_words(n)
    ents = [(Brick(empty, j), Brick(empty, j)) for j in range(1, i)]
    for a in range(k):
        words = tuple((a,) if c == d - 1 else () for c in range(n))
        ents.append((Brick(words, i), Brick(empty, i + a)))
    return TableElement(arities, i, k - 1, tuple(ents))


def gen_tau(i: int, arities) -> TableElement:
    """The transposition of indices i and i+1."""
    arities = tuple(arities)
    if i < 1:
        raise ValueError("index must be >= 1")
    empty = _empty_words(len(arities))
    ents = [(Brick(empty, j), Brick(empty, j)) for j in range(1, i)]
    ents.append((Brick(empty, i), Brick(empty, i + 1)))
    ents.append((Brick(empty, i + 1), Brick(empty, i)))
    return TableElement(arities, i + 1, 0, tuple(ents))


def tau_tilde(i: int, d: int, arities) -> TableElement:
    """tau_{i+k(d)-1} ... tau_{i+1} tau_i, the cycle moving index i past the
    block it was split into."""
    k = tuple(arities)[d - 1]
    return compose_all([gen_tau(i + j, arities) for j in range(k - 1, -1, -1)])


def _grid_permutation(i: int, d: int, d_prime: int, arities) -> dict[int, int]:
    kd = arities[d - 1]
    kdp = arities[d_prime - 1]
    perm = {}
    for p in range(kdp):
        for q in range(kd):
            perm[i + p * kd + q] = i + q * kdp + p
    return perm


def permutation_element(perm: dict[int, int], arities) -> TableElement:
    """Finite-support index permutation as a table element."""
    arities = tuple(arities)
    empty = _empty_words(len(arities))
    top = max(perm, default=0)
    ents = []
    for j in range(1, top + 1):
        ents.append((Brick(empty, j), Brick(empty, perm.get(j, j))))
    return TableElement(arities, top, 0, tuple(ents))


def alpha_element(i: int, d: int, d_prime: int, arities) -> TableElement:
    """The grid-transpose permutation element used in the mixed relation."""
    if d == d_prime:
        raise ValueError("need two distinct coordinates")
    arities = tuple(arities)
    return permutation_element(_grid_permutation(i, d, d_prime, arities), arities)


def alpha_word(i: int, d: int, d_prime: int, arities):
    """A word of transpositions realizing the grid permutation, plus its parity.

    Returns (indices, parity) where indices lists j's of the transpositions
    (j j+1), applied right to left, and parity is len(indices) mod 2.
    """
    if d == d_prime:
        raise ValueError("need two distinct coordinates")
    arities = tuple(arities)
    perm = _grid_permutation(i, d, d_prime, arities)
    block = sorted(perm)
    # bubble-sort the one-line form; recorded adjacent swaps compose, applied
    # right to left, to the permutation itself
    arr = [perm[x] for x in block]
    word: list[int] = []
    changed = True
    while changed:
        changed = False
        for t in range(len(arr) - 1):
            if arr[t] > arr[t + 1]:
                arr[t], arr[t + 1] = arr[t + 1], arr[t]
                word.append(block[0] + t)
                changed = True
    word.reverse()
    # sanity: the recorded word really induces the permutation
    assert _word_permutation(word, block) == perm, \
        "transposition word does not realize the permutation"
    return tuple(word), len(word) % 2


def _word_permutation(word, domain) -> dict[int, int]:
    """Permutation induced by a transposition word, rightmost applied first."""
    out = {}
    for x in domain:
        y = x
        for j in reversed(word):
            if y == j:
                y = j + 1
            elif y == j + 1:
                y = j
        out[x] = y
    return out


def alpha_parity(d: int, d_prime: int, arities) -> int:
    return alpha_word(1, d, d_prime, arities)[1]


def baker(d: int, d_prime: int, arities, block: int = 1) -> TableElement:
    """Move the first letter of coordinate d_prime onto the front of
    coordinate d, on the given index block; identity elsewhere."""
    arities = tuple(arities)
    n = len(arities)
    if d == d_prime:
        raise ValueError("need two distinct coordinates")
    if arities[d - 1] != arities[d_prime - 1]:
        raise ValueError("coordinates must have equal arities")
    empty = _empty_words(n)
    ents = [(Brick(empty, j), Brick(empty, j)) for j in range(1, block)]
    for a in range(arities[d_prime - 1]):
        src = tuple((a,) if c == d_prime - 1 else () for c in range(n))
        dst = tuple((a,) if c == d - 1 else () for c in range(n))
        ents.append((Brick(src, block), Brick(dst, block)))
    return TableElement(arities, block, 0, tuple(ents))


@dataclass
class RelationReport:
    checked: int
    failures: list[str]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def verify_relations(n: int, k, index_bound: int) -> RelationReport:
    """Instantiate every defining relation family up to the index bound and
    check both sides agree as table elements."""
    if index_bound < 2:
        raise ValueError("index_bound must be >= 2")
    arities = tuple(k)
    if len(arities) != n:
        raise ValueError("arity list length must equal n")
    checked = 0
    failures: list[str] = []

    def expect(name, inst, lhs, rhs):
        nonlocal checked
        checked += 1
        if not equal(lhs, rhs):
            failures.append(f"{name}{inst}")

    dims = range(1, n + 1)
    for d in dims:
        kd = arities[d - 1]
        for dp in dims:
            for i in range(1, index_bound + 1):
                for j in range(i + 1, index_bound + 1):
                    expect("commute_s", (i, j, d, dp),
                           compose(gen_s(i, d, arities), gen_s(j, dp, arities)),
                           compose(gen_s(j + kd - 1, dp, arities), gen_s(i, d, arities)))
    for i in range(1, index_bound + 1):
        ti = gen_tau(i, arities)
        expect("tau_involution", (i,), compose(ti, ti), identity(arities))
        expect("tau_braid", (i,),
               compose_all([ti, gen_tau(i + 1, arities), ti]),
               compose_all([gen_tau(i + 1, arities), ti, gen_tau(i + 1, arities)]))
        for j in range(1, index_bound + 1):
            if abs(i - j) >= 2:
                expect("tau_commute", (i, j),
                       compose(ti, gen_tau(j, arities)),
                       compose(gen_tau(j, arities), ti))
    for d in dims:
        kd = arities[d - 1]
        for i in range(1, index_bound + 1):
            expect("split_shift", (i, d),
                   compose(gen_s(i, d, arities), gen_tau(i, arities)),
                   compose(tau_tilde(i, d, arities), gen_s(i + 1, d, arities)))
            for j in range(1, index_bound + 1):
                if i < j:
                    expect("s_tau_above", (i, j, d),
                           compose(gen_s(i, d, arities), gen_tau(j, arities)),
                           compose(gen_tau(j + kd - 1, arities), gen_s(i, d, arities)))
                elif i > j + 1:
                    expect("s_tau_below", (i, j, d),
                           compose(gen_s(i, d, arities), gen_tau(j, arities)),
                           compose(gen_tau(j, arities), gen_s(i, d, arities)))
    for d in dims:
        for dp in dims:
            if d == dp:
                continue
            kd, kdp = arities[d - 1], arities[dp - 1]
            for i in range(1, index_bound + 1):
                lhs = compose_all([gen_s(i + t, dp, arities) for t in range(kd)]
                                  + [gen_s(i, d, arities)])
                rhs = compose_all([alpha_element(i, d, dp, arities)]
                                  + [gen_s(i + t, d, arities) for t in range(kdp)]
                                  + [gen_s(i, dp, arities)])
                expect("grid", (i, d, dp), lhs, rhs)
    return RelationReport(checked, failures)


@dataclass(frozen=True)
class CharacterAssignment:
    """Values in Z/m for all splitting generators (per coordinate) and all
    transpositions, annihilating every relation."""

    target_order: int
    x: tuple[int, ...]
    t: int

    def generates_target(self) -> bool:
        """True iff the values on the index-block probes (differences of
        splitting generators and conjugated transpositions) generate Z/m."""
        from math import gcd
        g = gcd(self.target_order, self.t)
        for a in self.x:
            for b in self.x:
                g = gcd(g, a - b)
        return g == 1


def character_search(n: int, k, target_order: int,
                     assignment_bound: int = 10 ** 6) -> list[CharacterAssignment]:
    """All Z/m characters of the generator-relation system.

    The relations reduce, using one unknown per coordinate plus one shared
    transposition value (index independence is forced once 2t = 0 holds), to
      2t = 0,  (k(d)-1) t = 0,
      (k(d)-1) x_{d'} - (k(d')-1) x_d = parity(alpha_{d,d'}) t   for d != d',
    which is solved exhaustively over Z/m.
    """
    if target_order < 2:
        raise ValueError("target_order must be >= 2")
    arities = tuple(k)
    if len(arities) != n:
        raise ValueError("arity list length must equal n")
    m = target_order
    if m ** n > assignment_bound:
        raise BoundExceeded("assignment space larger than the configured bound")
    eps = {(d, dp): alpha_parity(d, dp, arities)
           for d in range(1, n + 1) for dp in range(1, n + 1) if d != dp}
    t_candidates = [t for t in range(m)
                    if 2 * t % m == 0 and all((kd - 1) * t % m == 0 for kd in arities)]
    out = []
    for t in t_candidates:
        for xs in iproduct(range(m), repeat=n):
            ok = True
            for (d, dp), e in eps.items():
                kd, kdp = arities[d - 1], arities[dp - 1]
                if ((kd - 1) * xs[dp - 1] - (kdp - 1) * xs[d - 1] - e * t) % m:
                    ok = False
                    break
            if ok:
                out.append(CharacterAssignment(m, xs, t))
    return out
