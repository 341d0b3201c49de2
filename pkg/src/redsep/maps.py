"""Maps between finite spaces and the algebras their fibers generate.

The algebra of a map F is {A : F^-1(F(A)) = A}, i.e. the unions of fibers;
it is isomorphic to the power set of the kernel partition and is closed
under unions, intersections, complements and hence under every branch-based
set operation with values drawn from it.
"""

from dataclasses import dataclass
from typing import Optional

from .classes import SetClass
from .errors import InputError, ResourceError
from .masks import SubsetMask
from .spaces import DEFAULT_MAX_PRODUCT_POINTS, FinSpace, Partition, product

MAX_ALG_FIBERS = 16


class PointMap:
    """A function between the points of two finite spaces, given as a table."""

    __slots__ = ("dom", "cod", "table", "_fibers")

    def __init__(self, dom, cod, table):
        if not isinstance(dom, FinSpace) or not isinstance(cod, FinSpace):
            raise InputError("dom and cod must be FinSpace instances")
        table = tuple(table)
        if len(table) != dom.n:
            raise InputError(f"table length {len(table)} does not match domain size {dom.n}")
        fibers = [0] * cod.n
        for x, y in enumerate(table):
            if not isinstance(y, int) or y < 0 or y >= cod.n:
                raise InputError(f"table entry {y!r} at {x} outside codomain of size {cod.n}")
            fibers[y] |= 1 << x
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_fibers", tuple(fibers))

    def __setattr__(self, name, value):
        raise AttributeError("PointMap is immutable")

    @classmethod
    def identity(cls, space):
        return cls(space, space, range(space.n))

    def fiber_bits(self):
        """Per codomain point, the bitmask of its preimage (possibly empty)."""
        return self._fibers

    def image_bits(self, bits):
        out = 0
        t = bits
        while t:
            low = t & -t
            out |= 1 << self.table[low.bit_length() - 1]
            t ^= low
        return out

    def preimage_bits(self, bits):
        out = 0
        for y, fib in enumerate(self._fibers):
            if bits >> y & 1:
                out |= fib
        return out

    def image(self, mask):
        if not isinstance(mask, SubsetMask) or mask.n != self.dom.n:
            raise InputError(f"expected a SubsetMask over the domain ({self.dom.n} points)")
        return SubsetMask(self.cod.n, self.image_bits(mask.bits))

    def preimage(self, mask):
        if not isinstance(mask, SubsetMask) or mask.n != self.cod.n:
            raise InputError(f"expected a SubsetMask over the codomain ({self.cod.n} points)")
        return SubsetMask(self.dom.n, self.preimage_bits(mask.bits))

    def __eq__(self, other):
        return (
            isinstance(other, PointMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def __repr__(self):
        return f"PointMap({self.dom.n} -> {self.cod.n}, {list(self.table)})"


@dataclass(frozen=True)
class MapProps:
    continuous: bool
    closed_map: bool
    open_map: bool
    fibers_closed: bool
    surjective: bool
    injective: bool
    # the kernel keeps nonempty fibers only; this flags that one was dropped
    kernel_omits_empty_fiber: bool


def kernel(pm):
    """Partition of the domain into the nonempty fibers."""
    return Partition(
        pm.dom.n, [SubsetMask(pm.dom.n, f) for f in pm.fiber_bits() if f]
    )


def alg_contains(pm, mask):
    """Is the set saturated, i.e. a union of fibers?"""
    if not isinstance(mask, SubsetMask) or mask.n != pm.dom.n:
        raise InputError(f"expected a SubsetMask over the domain ({pm.dom.n} points)")
    return pm.preimage_bits(pm.image_bits(mask.bits)) == mask.bits


def alg_enumerate(pm, max_fibers=MAX_ALG_FIBERS):
    """All saturated sets; exactly 2^(#nonempty fibers) of them."""
    fibers = [f for f in pm.fiber_bits() if f]
    if len(fibers) > max_fibers:
        raise ResourceError(f"{len(fibers)} fibers exceed the cap {max_fibers}")
    out = []
    for pick in range(1 << len(fibers)):
        acc = 0
        t = pick
        i = 0
        while t:
            if t & 1:
                acc |= fibers[i]
            t >>= 1
            i += 1
        out.append(acc)
    return SetClass.from_bits(pm.dom.n, out)


def preimage_class(pm, sc):
    if sc.n != pm.cod.n:
        raise InputError(f"class universe {sc.n} does not match codomain {pm.cod.n}")
    return SetClass.from_bits(pm.dom.n, (pm.preimage_bits(b) for b in sc.member_bits()))


def image_class(pm, sc):
    if sc.n != pm.dom.n:
        raise InputError(f"class universe {sc.n} does not match domain {pm.dom.n}")
    return SetClass.from_bits(pm.cod.n, (pm.image_bits(b) for b in sc.member_bits()))


def diagonal_product(pms, max_points=DEFAULT_MAX_PRODUCT_POINTS):
    """x |-> (F_1(x), ..., F_k(x)) into the product of the codomains."""
    pms = list(pms)
    if not pms:
        raise InputError("diagonal product needs at least one map")
    dom = pms[0].dom
    for pm in pms[1:]:
        if pm.dom != dom:
            raise InputError("diagonal product factors must share a domain")
    cod, codec = product([pm.cod for pm in pms], max_points=max_points)
    table = [codec.encode([pm.table[x] for pm in pms]) for x in range(dom.n)]
    return PointMap(dom, cod, table)


def map_properties(pm):
    dom_open = pm.dom.open_bits()
    cod_open = pm.cod.open_bits()
    dom_full = (1 << pm.dom.n) - 1
    cod_full = (1 << pm.cod.n) - 1
    continuous = all(pm.preimage_bits(b) in dom_open for b in cod_open)
    open_map = all(pm.image_bits(b) in cod_open for b in dom_open)
    closed_map = all(
        cod_full ^ pm.image_bits(dom_full ^ b) in cod_open for b in dom_open
    )
    fibers_closed = all(
        dom_full ^ f in dom_open for f in pm.fiber_bits() if f
    )
    surjective = all(f for f in pm.fiber_bits())
    injective = all(f.bit_count() <= 1 for f in pm.fiber_bits())
    return MapProps(
        continuous=continuous,
        closed_map=closed_map,
        open_map=open_map,
        fibers_closed=fibers_closed,
        surjective=surjective,
        injective=injective,
        kernel_omits_empty_fiber=not surjective,
    )


@dataclass(frozen=True)
class DirectedImageReport:
    equal: bool
    directed: bool
    decreasing: bool
    intersection_image: SubsetMask  # F(n A_i)
    image_intersection: SubsetMask  # n F(A_i)
    missing: Optional[SubsetMask]   # points of the latter not in the former


def _order_closure(k, relation):
    """Reflexive-transitive closure as adjacency bitmasks; rejects cycles."""
    above = [1 << i for i in range(k)]
    for pair in relation:
        try:
            i, j = pair
        except (TypeError, ValueError):
            raise InputError(f"order relation entry {pair!r} is not a pair") from None
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < k and 0 <= j < k):
            raise InputError(f"order relation entry {pair!r} outside index range 0..{k - 1}")
        above[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(k):
            acc = above[i]
            t = acc
            while t:
                low = t & -t
                acc |= above[low.bit_length() - 1]
                t ^= low
            if acc != above[i]:
                above[i] = acc
                changed = True
    for i in range(k):
        for j in range(k):
            if i != j and above[i] >> j & 1 and above[j] >> i & 1:
                raise InputError(f"order relation has a cycle through {i} and {j}")
    return above


def directed_image_check(pm, relation, family):
    """Compare F(n A_i) with n F(A_i) and report which hypotheses held.

    The family is indexed 0..k-1; relation lists pairs (i, j) meaning i <= j.
    Directedness (any two indices have an upper bound) plus decreasingness
    (larger index, smaller set) force equality for any map between finite
    sets; dropping either admits strict inclusions.
    """
    family = list(family)
    if not family:
        raise InputError("family must be nonempty")
    for m in family:
        if not isinstance(m, SubsetMask) or m.n != pm.dom.n:
            raise InputError(f"family member {m!r} is not a SubsetMask over the domain")
    k = len(family)
    above = _order_closure(k, relation)
    directed = all(
        any(above[i] >> u & 1 and above[j] >> u & 1 for u in range(k))
        for i in range(k)
        for j in range(k)
    )
    decreasing = all(
        not (above[i] >> j & 1) or family[j].issubset(family[i])
        for i in range(k)
        for j in range(k)
    )
    inter = (1 << pm.dom.n) - 1
    for m in family:
        inter &= m.bits
    lhs = pm.image_bits(inter)
    rhs = (1 << pm.cod.n) - 1
    for m in family:
        rhs &= pm.image_bits(m.bits)
    missing = rhs & ~lhs
    return DirectedImageReport(
        equal=lhs == rhs,
        directed=directed,
        decreasing=decreasing,
        intersection_image=SubsetMask(pm.cod.n, lhs),
        image_intersection=SubsetMask(pm.cod.n, rhs),
        missing=SubsetMask(pm.cod.n, missing) if missing else None,
    )
