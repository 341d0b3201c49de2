"""Branch-indexed set operations over finite universes.

A Base is a finite set of branches (nonempty sequences over a finite
alphabet).  Applying the operation to an indexed family of sets takes, for
each branch, the intersection of the sets indexed along it, and then the
union over all branches.  Two indexings are supported:

prefix  the index set is the prefix closure of the branches (including the
        empty prefix, which defaults to the whole universe when unassigned);
        a branch intersects the sets indexed by each of its prefixes
range   the index set is the alphabet; a branch intersects the sets indexed
        by the symbols it mentions

The dual operation complements the family, evaluates, and complements the
result.
"""

from itertools import product as iproduct

from .errors import InputError, ModeError, ResourceError
from .masks import SubsetMask

PREFIX = "prefix"
RANGE = "range"
MODES = (PREFIX, RANGE)

MAX_ALPHABET = 6
MAX_DEPTH = 4
MAX_BRANCHES = 4096


def _check_mode(mode):
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")


def _length_lex_key(seq):
    return (len(seq), seq)


class Base:
    """A finite set of branches over the alphabet {0, ..., alphabet-1}."""

    __slots__ = ("alphabet", "branches", "mode_hint")

    def __init__(self, alphabet, branches, mode_hint=PREFIX):
        if not isinstance(alphabet, int) or alphabet < 1:
            raise InputError(f"alphabet bound must be a positive int, got {alphabet!r}")
        _check_mode(mode_hint)
        seen = set()
        for br in branches:
            br = tuple(br)
            if not br:
                raise InputError("branches must be nonempty sequences")
            for s in br:
                if not isinstance(s, int) or s < 0 or s >= alphabet:
                    raise InputError(f"branch symbol {s!r} outside alphabet {alphabet}")
            seen.add(br)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "branches", tuple(sorted(seen, key=_length_lex_key)))
        object.__setattr__(self, "mode_hint", mode_hint)

    def __setattr__(self, name, value):
        raise AttributeError("Base is immutable")

    def depth(self):
        return max((len(br) for br in self.branches), default=0)

    def prefix_indices(self):
        """All prefixes of all branches, including the empty one, length-lex order."""
        idx = {()}
        for br in self.branches:
            for k in range(1, len(br) + 1):
                idx.add(br[:k])
        return tuple(sorted(idx, key=_length_lex_key))

    def range_indices(self):
        """The symbols mentioned by some branch, in increasing order."""
        syms = set()
        for br in self.branches:
            syms.update(br)
        return tuple(sorted(syms))

    def relevant_indices(self, mode):
        _check_mode(mode)
        return self.prefix_indices() if mode == PREFIX else self.range_indices()

    def __eq__(self, other):
        return (
            isinstance(other, Base)
            and self.alphabet == other.alphabet
            and self.branches == other.branches
            and self.mode_hint == other.mode_hint
        )

    def __hash__(self):
        return hash((self.alphabet, self.branches, self.mode_hint))

    def __repr__(self):
        return f"Base({self.alphabet}, {list(self.branches)}, {self.mode_hint!r})"


def compile_positions(base, mode, index_order=None):
    """Per-branch lists of positions into index_order; the raw-int eval plan.

    The intersection for a branch runs over exactly these positions, so
    callers can evaluate against any tuple of bitmasks aligned with
    index_order without re-deriving the index structure.
    """
    if index_order is None:
        index_order = base.relevant_indices(mode)
    pos = {idx: i for i, idx in enumerate(index_order)}
    plans = []
    if mode == PREFIX:
        for br in base.branches:
            try:
                plans.append([pos[br[:k]] for k in range(len(br) + 1)])
            except KeyError as e:
                raise InputError(f"index {e.args[0]} missing from index order") from None
    else:
        for br in base.branches:
            try:
                plans.append([pos[s] for s in sorted(set(br))])
            except KeyError as e:
                raise InputError(f"index {e.args[0]} missing from index order") from None
    return plans


def eval_plan_bits(plans, values):
    """Union over branches of intersections of values[p]; raw bitmask core."""
    out = 0
    for plan in plans:
        acc = -1
        for p in plan:
            acc &= values[p]
            if not acc:
                break
        if acc:
            out |= acc
    return out


class IndexedFamily:
    """An assignment of subsets of a fixed universe to branch indices.

    Prefix-mode keys are tuples of ints, range-mode keys are ints.  Unassigned
    indices fall back to the default; the empty prefix additionally falls back
    to the full universe.
    """

    __slots__ = ("n", "mode", "assignments", "default")

    def __init__(self, n, mode, assignments, default=None):
        _check_mode(mode)
        if not isinstance(n, int) or n < 0:
            raise InputError(f"universe size must be a nonnegative int, got {n!r}")
        clean = {}
        for key, val in dict(assignments).items():
            if mode == PREFIX:
                key = tuple(key)
                if not all(isinstance(s, int) and s >= 0 for s in key):
                    raise InputError(f"prefix index {key!r} must be a tuple of nonnegative ints")
            else:
                if not isinstance(key, int) or key < 0:
                    raise InputError(f"range index {key!r} must be a nonnegative int")
            if not isinstance(val, SubsetMask) or val.n != n:
                raise InputError(f"value for index {key!r} must be a SubsetMask over {n} points")
            clean[key] = val
        if default is not None and (not isinstance(default, SubsetMask) or default.n != n):
            raise InputError(f"default must be a SubsetMask over {n} points or None")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "assignments", clean)
        object.__setattr__(self, "default", default)

    def __setattr__(self, name, value):
        raise AttributeError("IndexedFamily is immutable")

    @classmethod
    def from_list(cls, n, values, default=None):
        """Range-mode family assigning values[i] to symbol i."""
        return cls(n, RANGE, dict(enumerate(values)), default)

    def value(self, index):
        if self.mode == PREFIX:
            index = tuple(index)
        if index in self.assignments:
            return self.assignments[index]
        if self.default is not None:
            return self.default
        if self.mode == PREFIX and index == ():
            return SubsetMask.full(self.n)
        raise InputError(f"no value assigned to index {index!r} and no default set")

    def map_values(self, fn):
        """Apply fn to every effective value, materializing the empty prefix."""
        assignments = {k: fn(v) for k, v in self.assignments.items()}
        if self.mode == PREFIX and () not in assignments:
            assignments[()] = fn(SubsetMask.full(self.n))
        default = fn(self.default) if self.default is not None else None
        return IndexedFamily(self.n, self.mode, assignments, default)

    def complemented(self):
        return self.map_values(lambda m: m.complement())

    def __repr__(self):
        return (
            f"IndexedFamily({self.n}, {self.mode!r}, {self.assignments!r}, "
            f"default={self.default!r})"
        )


def evaluate(base, family, mode=None):
    """Union over branches of the intersections indexed along each branch."""
    if mode is None:
        mode = family.mode
    _check_mode(mode)
    if mode != family.mode:
        raise ModeError(f"family is {family.mode}-indexed, cannot evaluate in {mode} mode")
    order = base.relevant_indices(mode)
    values = [family.value(idx).bits for idx in order]
    plans = compile_positions(base, mode, order)
    return SubsetMask(family.n, eval_plan_bits(plans, values))


# contract name for the operation
eval = evaluate


def dual_evaluate(base, family, mode=None):
    """Universe minus evaluate(base, complemented family)."""
    return evaluate(base, family.complemented(), mode).complement()


dual_eval = dual_evaluate


def completion(base, length_bound, max_branches=MAX_BRANCHES):
    """All sequences of length <= bound whose symbol set matches some branch's.

    Only meaningful under range indexing, where a branch's intersection
    depends on its symbol set alone; evaluation is invariant under it.
    """
    if base.mode_hint != RANGE:
        raise ModeError("completion is defined for range-mode bases only")
    if not base.branches:
        raise InputError("completion needs at least one branch")
    if length_bound < base.depth():
        raise InputError(
            f"length bound {length_bound} is below the longest branch ({base.depth()})"
        )
    ranges = {frozenset(br) for br in base.branches}
    symbols = sorted(set().union(*ranges))
    out = []
    for length in range(1, length_bound + 1):
        for seq in iproduct(symbols, repeat=length):
            if frozenset(seq) in ranges:
                out.append(seq)
                if len(out) > max_branches:
                    raise ResourceError(
                        f"completion exceeds the branch cap ({max_branches})"
                    )
    return Base(base.alphabet, out, RANGE)


def decreasing_replacement(family):
    """Replace each value by the intersection along all its prefixes.

    Values are materialized on the prefix closure of the assigned keys, so
    evaluation agrees with the input for every base whose indices lie in that
    closure, and the result is decreasing along branch extension.
    """
    if family.mode != PREFIX:
        raise ModeError("decreasing replacement is defined for prefix-mode families only")
    closure = {()}
    for key in family.assignments:
        for k in range(1, len(key) + 1):
            closure.add(key[:k])
    out = {}
    for key in sorted(closure, key=_length_lex_key):
        acc = SubsetMask.full(family.n)
        for k in range(len(key) + 1):
            acc = acc & family.value(key[:k])
        out[key] = acc
    return IndexedFamily(family.n, PREFIX, out, None)


def is_decreasing(family):
    """True when every assigned value contains each of its extensions' values."""
    if family.mode != PREFIX:
        raise ModeError("decreasingness concerns prefix-mode families only")
    for key in family.assignments:
        for k in range(len(key)):
            try:
                parent = family.value(key[:k])
            except InputError:
                continue
            if not family.value(key).issubset(parent):
                return False
    return True


def canonical_base(
    kind,
    *params,
    max_alphabet=MAX_ALPHABET,
    max_depth=MAX_DEPTH,
    max_branches=MAX_BRANCHES,
):
    """Stock bases: union(m), intersection(m), a_operation(alphabet, depth)."""
    if kind == "union":
        (m,) = params
        if m < 1 or m > max_alphabet:
            raise ResourceError(f"union arity {m} outside 1..{max_alphabet}")
        return Base(m, [(i,) for i in range(m)], RANGE)
    if kind == "intersection":
        (m,) = params
        if m < 1 or m > max_alphabet:
            raise ResourceError(f"intersection arity {m} outside 1..{max_alphabet}")
        return Base(m, [tuple(range(m))], RANGE)
    if kind == "a_operation":
        alphabet, depth = params
        if alphabet < 1 or alphabet > max_alphabet:
            raise ResourceError(f"alphabet {alphabet} outside 1..{max_alphabet}")
        if depth < 1 or depth > max_depth:
            raise ResourceError(f"depth {depth} outside 1..{max_depth}")
        if alphabet**depth > max_branches:
            raise ResourceError(
                f"a_operation({alphabet}, {depth}) has {alphabet**depth} branches, "
                f"cap is {max_branches}"
            )
        return Base(alphabet, iproduct(range(alphabet), repeat=depth), RANGE)
    raise InputError(f"unknown canonical base kind {kind!r}")


def seq_to_index(seq, alphabet):
    """Length-lex rank of a sequence; the empty sequence ranks 0."""
    if alphabet < 1:
        raise InputError("alphabet bound must be positive")
    seq = tuple(seq)
    if any(not isinstance(s, int) or s < 0 or s >= alphabet for s in seq):
        raise InputError(f"sequence {seq!r} not over alphabet {alphabet}")
    length = len(seq)
    if alphabet == 1:
        return length
    shorter = (alphabet**length - 1) // (alphabet - 1)
    rank = 0
    for s in seq:
        rank = rank * alphabet + s
    return shorter + rank


def index_to_seq(index, alphabet):
    """Inverse of seq_to_index."""
    if alphabet < 1:
        raise InputError("alphabet bound must be positive")
    if not isinstance(index, int) or index < 0:
        raise InputError(f"index must be a nonnegative int, got {index!r}")
    if alphabet == 1:
        return (0,) * index
    length = 0
    while (alphabet ** (length + 1) - 1) // (alphabet - 1) <= index:
        length += 1
    rank = index - (alphabet**length - 1) // (alphabet - 1)
    seq = []
    for _ in range(length):
        seq.append(rank % alphabet)
        rank //= alphabet
    return tuple(reversed(seq))
