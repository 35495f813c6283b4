"""A free graded operad on one ternary generator, with Koszul signs.

Monomials are planar rooted trees whose internal vertices all have three
children, encoded as nested tuples: the leaf is ``()`` and a vertex is a
3-tuple of subtrees.  A monomial with k vertices has arity 2k+1.  The sign of
any composite expression is taken relative to the preorder listing of the
generator occurrences (root first, then subtrees left to right): reordering
two generators of odd weight costs a sign, generators of even weight never
do.  Grafting b into leaf i of a therefore multiplies by (-1)^(kb * r) where
kb is b's vertex count and r the number of a's vertices that preorder visits
after leaf i, when the generator weight is odd.

Two quotients share this engine, selected by ``OperadConfig``:

* the odd generator with the rewriting rule "vertex in the middle slot goes
  to the sum of the two vertex-in-outer-slot trees", whose normal monomials
  (no internal middle child) biject with planar binary trees;
* its even Koszul dual, whose two rules push the inner vertex to the first
  slot and whose normal monomials are the left combs, one per arity.

``cyclic_transport`` applies the (anti)cyclic rotation determined by the
config's value on the generator, recursing through the two rotation axioms
(prune the first subtree and flip, or shift a later subtree one slot left),
and reduces the result.  ``q_element`` builds the signed normal monomial
attached to a binary tree, and ``psi`` reads a normal element back as an
integer vector on the projective basis indexed by binary trees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from tamcox.trees import BinaryTree, LEAF as TREE_LEAF, enumerate_trees, node, rank

Monomial = tuple  # () for the leaf, (a, b, c) for a vertex

LEAF = ()
GENERATOR = (LEAF, LEAF, LEAF)


class OperadError(ValueError):
    pass


class RewriteDefect(RuntimeError):
    """A reduction contradicted the recorded confluent normal forms."""


@dataclass(frozen=True)
class OperadConfig:
    """Presentation data: generator parity, rewrite rules, rotation signs.

    ``rules`` maps a child slot (1-based) holding an internal vertex to the
    replacement: a tuple of (slot, coefficient) pairs, each standing for the
    two-vertex pattern with the inner vertex in that slot and the five
    hanging subtrees kept in left-to-right order.
    """

    name: str
    generator_odd: bool
    rules: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    transport: str  # "anticyclic" or "cyclic"
    generator_sign: int

    def __post_init__(self):
        if self.transport not in ("anticyclic", "cyclic"):
            raise OperadError(f"unknown transport kind {self.transport!r}")
        if self.generator_sign not in (1, -1):
            raise OperadError("generator transport value must be +-generator")

    @property
    def rule_slots(self) -> tuple[int, ...]:
        return tuple(slot for slot, _ in self.rules)


V_CONFIG = OperadConfig(
    name="V",
    generator_odd=True,
    rules=((2, ((1, 1), (3, 1))),),
    transport="anticyclic",
    generator_sign=-1,
)

# Cyclic structure on the same quotient; globally the negative of V_CONFIG's.
V_CYCLIC_CONFIG = OperadConfig(
    name="V-cyclic",
    generator_odd=True,
    rules=V_CONFIG.rules,
    transport="cyclic",
    generator_sign=1,
)

W_CONFIG = OperadConfig(
    name="W",
    generator_odd=False,
    rules=((2, ((1, -1),)), (3, ((1, 1),))),
    transport="cyclic",
    generator_sign=-1,
)


@lru_cache(maxsize=None)
def vertex_count(t: Monomial) -> int:
    if not t:
        return 0
    return 1 + sum(vertex_count(c) for c in t)


def arity(t: Monomial) -> int:
    return 2 * vertex_count(t) + 1


def weight(t: Monomial, config: OperadConfig) -> int:
    return vertex_count(t) if config.generator_odd else 0


def monomial_to_text(t: Monomial) -> str:
    if not t:
        return "*"
    return "m[" + ",".join(monomial_to_text(c) for c in t) + "]"


def monomial_from_text(s: str) -> Monomial:
    def term(i: int) -> tuple[Monomial, int]:
        if i < len(s) and s[i] == "*":
            return LEAF, i + 1
        if s.startswith("m[", i):
            children = []
            j = i + 2
            for k in range(3):
                child, j = term(j)
                children.append(child)
                expected = "," if k < 2 else "]"
                if j >= len(s) or s[j] != expected:
                    raise OperadError(f"expected {expected!r} at offset {j} in {s!r}")
                j += 1
            return tuple(children), j
        raise OperadError(f"unexpected character at offset {i} in {s!r}")

    t, end = term(0)
    if end != len(s):
        raise OperadError(f"trailing input at offset {end} in {s!r}")
    return t


def _splice(t: Monomial, i: int, b: Monomial) -> tuple[Monomial, int]:
    """Replace leaf i (1-based) of t by b; also count vertices preorder
    visits strictly before that leaf."""
    if not t:
        if i != 1:
            raise OperadError("leaf index out of range")
        return b, 0
    seen = 1
    rem = i
    for pos, child in enumerate(t):
        a_child = arity(child)
        if rem <= a_child:
            sub, before = _splice(child, rem, b)
            return t[:pos] + (sub,) + t[pos + 1 :], seen + before
        rem -= a_child
        seen += vertex_count(child)
    raise OperadError("leaf index out of range")


def graft(a: Monomial, i: int, b: Monomial, odd: bool) -> tuple[Monomial, int]:
    """Monomial composition: grafted tree and its Koszul sign."""
    if not 1 <= i <= arity(a):
        raise OperadError(f"position {i} out of range for arity {arity(a)}")
    tree, before = _splice(a, i, b)
    if not odd:
        return tree, 1
    after = vertex_count(a) - before
    sign = -1 if (vertex_count(b) * after) % 2 else 1
    return tree, sign


class OperadElement:
    """Integer combination of monomials of one arity; zero terms never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        clean = {t: c for t, c in (terms or {}).items() if c}
        arities = {arity(t) for t in clean}
        if len(arities) > 1:
            raise OperadError("element mixes arities")
        self.terms = clean

    @classmethod
    def monomial(cls, t: Monomial, coeff: int = 1) -> OperadElement:
        return cls({t: coeff})

    @classmethod
    def unit(cls) -> OperadElement:
        return cls({LEAF: 1})

    @classmethod
    def generator(cls) -> OperadElement:
        return cls({GENERATOR: 1})

    @classmethod
    def zero(cls) -> OperadElement:
        return cls({})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def arity(self) -> int:
        if self.is_zero:
            raise OperadError("the zero element has no arity")
        return arity(next(iter(self.terms)))

    def __eq__(self, other) -> bool:
        return isinstance(other, OperadElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: OperadElement) -> OperadElement:
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return OperadElement(out)

    def __neg__(self) -> OperadElement:
        return OperadElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: OperadElement) -> OperadElement:
        return self + (-other)

    def scale(self, k: int) -> OperadElement:
        return OperadElement({t: k * c for t, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items())

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c, "tree": monomial_to_text(t)} for t, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> OperadElement:
        out: dict[Monomial, int] = {}
        for item in data:
            t = monomial_from_text(item["tree"])
            out[t] = out.get(t, 0) + int(item["coeff"])
        return cls(out)

    def __repr__(self):
        if self.is_zero:
            return "OperadElement(0)"
        bits = [f"{c:+d}*{monomial_to_text(t)}" for t, c in self.sorted_terms()]
        return "OperadElement(" + " ".join(bits) + ")"


def compose(a: OperadElement, i: int, b: OperadElement, config: OperadConfig) -> OperadElement:
    """Bilinear extension of grafting b into input i of a."""
    out: dict[Monomial, int] = {}
    for ta, ca in a.terms.items():
        for tb, cb in b.terms.items():
            tree, sign = graft(ta, i, tb, config.generator_odd)
            out[tree] = out.get(tree, 0) + sign * ca * cb
    return OperadElement(out)


def compose_max(a: OperadElement, b: OperadElement, config: OperadConfig) -> OperadElement:
    return compose(a, a.arity(), b, config)


@lru_cache(maxsize=None)
def enumerate_monomials(k: int) -> tuple[Monomial, ...]:
    """All ternary-tree monomials with k vertices."""
    if k == 0:
        return (LEAF,)
    out = []
    for a in range(k):
        for b in range(k - a):
            c = k - 1 - a - b
            for left in enumerate_monomials(a):
                for mid in enumerate_monomials(b):
                    for right in enumerate_monomials(c):
                        out.append((left, mid, right))
    return tuple(out)


def bad_vertices(t: Monomial, config: OperadConfig) -> list[tuple[tuple[int, ...], int]]:
    """Preordered (path, slot) pairs where a rewrite rule applies.

    A path lists 0-based child indices from the root; the slot is the 1-based
    child position holding an internal vertex matched by a rule.
    """
    found: list[tuple[tuple[int, ...], int]] = []

    def walk(sub: Monomial, path: tuple[int, ...]):
        if not sub:
            return
        for slot in config.rule_slots:
            if sub[slot - 1]:
                found.append((path, slot))
        for pos, child in enumerate(sub):
            walk(child, path + (pos,))

    walk(t, ())
    return found


@lru_cache(maxsize=None)
def is_normal(t: Monomial, config: OperadConfig) -> bool:
    if not t:
        return True
    if any(t[slot - 1] for slot in config.rule_slots):
        return False
    return all(is_normal(c, config) for c in t)


def mu(t: Monomial, config: OperadConfig) -> int:
    """Termination measure: total rule-slot steps on root paths of vertices."""
    slots = {s - 1 for s in config.rule_slots}

    def walk(sub: Monomial, depth: int) -> int:
        if not sub:
            return 0
        return depth + sum(
            walk(child, depth + (pos in slots)) for pos, child in enumerate(sub)
        )

    return walk(t, 0)


def _subtree_at(t: Monomial, path: tuple[int, ...]) -> Monomial:
    for i in path:
        t = t[i]
    return t


def _replace_at(t: Monomial, path: tuple[int, ...], sub: Monomial) -> Monomial:
    if not path:
        return sub
    i = path[0]
    return t[:i] + (_replace_at(t[i], path[1:], sub),) + t[i + 1 :]


def _leaf_index_of_path(t: Monomial, path: tuple[int, ...]) -> int:
    """1-based leaf position where the subtree at path would reattach."""
    idx = 1
    for step in path:
        for child in t[:step]:
            idx += arity(child)
        t = t[step]
    return idx


def _pattern(slot: int) -> Monomial:
    children = [LEAF, LEAF, LEAF]
    children[slot - 1] = GENERATOR
    return tuple(children)


def _apply_pattern(
    slot: int, hang: tuple[Monomial, ...], config: OperadConfig
) -> tuple[Monomial, int]:
    """Graft five subtrees onto the two-vertex pattern, rightmost first."""
    elem = _pattern(slot)
    sign = 1
    for pos in range(5, 0, -1):
        elem, s = graft(elem, pos, hang[pos - 1], config.generator_odd)
        sign *= s
    return elem, sign


def rewrite_at(
    t: Monomial, path: tuple[int, ...], slot: int, config: OperadConfig
) -> dict[Monomial, int]:
    """One rule application at the given vertex, with all Koszul signs."""
    vertex = _subtree_at(t, path)
    inner = vertex[slot - 1]
    if not inner:
        raise OperadError("no rule applies at this vertex")
    replacement = dict(config.rules)[slot]
    hang_before = vertex[: slot - 1]
    hang_after = vertex[slot:]
    hang = tuple(hang_before) + tuple(inner) + tuple(hang_after)

    context = _replace_at(t, path, LEAF)
    leaf_pos = _leaf_index_of_path(t, path)

    # Sign relating t to context o subtree: graft the untouched local block.
    local, s_local = _apply_pattern(slot, hang, config)
    rebuilt, s_ctx = graft(context, leaf_pos, local, config.generator_odd)
    if rebuilt != t:
        raise OperadError("internal rewrite bookkeeping error")
    base_sign = s_ctx * s_local  # both are +-1

    out: dict[Monomial, int] = {}
    for new_slot, coeff in replacement:
        new_local, s_new = _apply_pattern(new_slot, hang, config)
        new_tree, s_new_ctx = graft(context, leaf_pos, new_local, config.generator_odd)
        total = base_sign * coeff * s_new * s_new_ctx
        out[new_tree] = out.get(new_tree, 0) + total
    return out


@dataclass(frozen=True)
class RewriteStep:
    monomial: Monomial
    path: tuple[int, ...]
    slot: int
    mu_before: int
    mu_after: tuple[int, ...]


def normal_form(
    e: OperadElement,
    config: OperadConfig,
    *,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    trace: list[RewriteStep] | None = None,
) -> OperadElement:
    """Reduce to the fixed point of the rewriting system.

    ``strategy`` picks the vertex rewritten in the chosen monomial:
    "leftmost" (first in preorder), "rightmost" (last in preorder) or
    "random" (requires ``rng``).  All strategies reach the same normal form;
    traces are deterministic except under "random".
    """
    if strategy == "random" and rng is None:
        raise OperadError("random strategy needs an rng")
    terms = dict(e.terms)
    while True:
        candidates = [t for t in terms if not is_normal(t, config)]
        if not candidates:
            break
        t = min(candidates)
        spots = bad_vertices(t, config)
        if strategy == "leftmost":
            path, slot = spots[0]
        elif strategy == "rightmost":
            path, slot = spots[-1]
        elif strategy == "random":
            path, slot = rng.choice(spots)
        else:
            raise OperadError(f"unknown strategy {strategy!r}")
        coeff = terms.pop(t)
        replaced = rewrite_at(t, path, slot, config)
        if trace is not None:
            trace.append(
                RewriteStep(
                    monomial=t,
                    path=path,
                    slot=slot,
                    mu_before=mu(t, config),
                    mu_after=tuple(mu(s, config) for s in replaced),
                )
            )
        for s, c in replaced.items():
            new = terms.get(s, 0) + coeff * c
            if new:
                terms[s] = new
            else:
                terms.pop(s, None)
    return OperadElement(terms)


@lru_cache(maxsize=None)
def _q_monomial(x: BinaryTree) -> tuple[Monomial, int]:
    """Signed normal monomial of a binary tree; middle children stay leaves."""
    if x.is_leaf:
        return LEAF, 1
    tl, sl = _q_monomial(x.left)
    tr, sr = _q_monomial(x.right)
    first, s1 = graft(GENERATOR, 1, tl, odd=True)
    full, s2 = graft(first, arity(first), tr, odd=True)
    sign = sl * sr * s1 * s2 * (-1 if x.left.size % 2 else 1)
    return full, sign


def q_element(x: BinaryTree) -> OperadElement:
    t, sign = _q_monomial(x)
    return OperadElement({t: sign})


def binary_shape(t: Monomial) -> BinaryTree:
    """Inverse of the normal-monomial shape map (middle children must be leaves)."""
    if not t:
        return TREE_LEAF
    if t[1]:
        raise OperadError("monomial is not in normal form")
    return node(binary_shape(t[0]), binary_shape(t[2]))


def psi(e: OperadElement):
    """Read a normal element as integer coordinates on the projective basis.

    Returns a grothendieck.K0Vector tagged "P"; import is deferred to keep
    this module importable on its own.
    """
    from tamcox.grothendieck import K0Vector

    if e.is_zero:
        raise OperadError("psi needs a homogeneous arity; got zero")
    k = e.arity()
    if k % 2 == 0:
        raise OperadError("arity must be odd")
    n = (k - 1) // 2
    coords = [0] * len(enumerate_trees(n))
    for t, c in e.terms.items():
        x = binary_shape(t)
        monom, sign = _q_monomial(x)
        assert monom == t
        coords[rank(x)] += sign * c
    return K0Vector(n=n, basis="P", coords=tuple(coords))


def _transport_monomial(t: Monomial, config: OperadConfig) -> OperadElement:
    """Rotation of a single free monomial, not yet reduced."""
    anticyclic = config.transport == "anticyclic"
    if not t:
        return OperadElement({LEAF: -1 if anticyclic else 1})
    if t == GENERATOR:
        return OperadElement({GENERATOR: config.generator_sign})
    first, mid, last = t
    if first:
        pruned = (LEAF, mid, last)
        _, split_sign = graft(pruned, 1, first, config.generator_odd)
        wa = weight(pruned, config)
        wb = weight(first, config)
        sign = split_sign * (1 if (wa * wb) % 2 == 0 else -1)
        if anticyclic:
            sign = -sign
        rot_b = _transport_monomial(first, config)
        rot_a = _transport_monomial(pruned, config)
        return compose_max(rot_b, rot_a, config).scale(sign)
    j = 2 if mid else 3
    sub = t[j - 1]
    pruned = t[: j - 1] + (LEAF,) + t[j:]
    _, split_sign = graft(pruned, j, sub, config.generator_odd)
    rotated = _transport_monomial(pruned, config)
    return compose(rotated, j - 1, OperadElement.monomial(sub), config).scale(split_sign)


def cyclic_transport(e: OperadElement, config: OperadConfig) -> OperadElement:
    """The (anti)cyclic rotation of an element, reduced to normal form."""
    out = OperadElement.zero()
    for t, c in e.terms.items():
        out = out + _transport_monomial(t, config).scale(c)
    return normal_form(out, config)


@dataclass(frozen=True)
class CriticalPairReport:
    value: OperadElement
    left_trace: tuple[RewriteStep, ...]
    right_trace: tuple[RewriteStep, ...]

    @property
    def left_steps(self) -> int:
        return len(self.left_trace)

    @property
    def right_steps(self) -> int:
        return len(self.right_trace)


def critical_pair_check(config: OperadConfig = V_CONFIG) -> CriticalPairReport:
    """Reduce the one overlap of the middle-slot rule both ways.

    The overlap monomial (inner vertex in the middle slot of a middle-slot
    vertex) is reduced with the leftmost and the rightmost strategies; both
    must agree with the recorded confluent value, the sum of the two
    "outer-slot inside outer-slot" monomials.
    """
    if config.rules != V_CONFIG.rules or not config.generator_odd:
        raise OperadError("the critical pair is specific to the odd presentation")
    g = OperadElement.generator()
    overlap = compose(compose(g, 2, g, config), 3, g, config)
    assert overlap == compose(g, 2, compose(g, 2, g, config), config)

    left_trace: list[RewriteStep] = []
    right_trace: list[RewriteStep] = []
    left = normal_form(overlap, config, strategy="leftmost", trace=left_trace)
    right = normal_form(overlap, config, strategy="rightmost", trace=right_trace)

    expected = compose(g, 1, compose(g, 3, g, config), config) + compose(
        g, 3, compose(g, 1, g, config), config
    )
    if left != right or left != expected:
        raise RewriteDefect(
            "critical pair reductions disagree: "
            f"left={left!r} right={right!r} expected={expected!r}"
        )
    return CriticalPairReport(
        value=left, left_trace=tuple(left_trace), right_trace=tuple(right_trace)
    )


def random_monomial(rng: random.Random, vertices: int) -> Monomial:
    """Uniformly random ternary monomial with the given vertex count."""
    pool = enumerate_monomials(vertices)
    return pool[rng.randrange(len(pool))]


def random_element(
    rng: random.Random, vertices: int, terms: int = 3, coeff_bound: int = 3
) -> OperadElement:
    out: dict[Monomial, int] = {}
    for _ in range(terms):
        t = random_monomial(rng, vertices)
        c = rng.choice([k for k in range(-coeff_bound, coeff_bound + 1) if k])
        out[t] = out.get(t, 0) + c
    return OperadElement(out)


def dimension_basis(n: int, config: OperadConfig = V_CONFIG) -> tuple[Monomial, ...]:
    """Normal monomials with n vertices (arity 2n+1)."""
    return tuple(t for t in enumerate_monomials(n) if is_normal(t, config))


def iter_axiom_instances(
    rng: random.Random, samples: int, max_vertices: int
) -> Iterator[tuple[Monomial, Monomial, Monomial]]:
    for _ in range(samples):
        ka = rng.randint(1, max(1, max_vertices - 2))
        kb = rng.randint(1, max(1, max_vertices - ka - 1))
        kc = max(1, max_vertices - ka - kb)
        yield (
            random_monomial(rng, ka),
            random_monomial(rng, kb),
            random_monomial(rng, kc),
        )
