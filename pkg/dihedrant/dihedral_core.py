"""
Dihedral Core
Exact arithmetic, conjugacy classes, regular representations and automorphisms of D_2n.

Elements are pairs (rot, refl) naming a^rot * b^refl. Vertices use the global
indexing a^i -> i, a^i * b -> n + i.
"""

import re
from dataclasses import dataclass
from functools import total_ordering
from math import gcd
from typing import TYPE_CHECKING, FrozenSet, Iterable, Iterator, List, Optional, Sequence

from .errors import DegenerateGroupError
from .permgroup import Permutation, PermutationGroup

if TYPE_CHECKING:
    from .cayley import ConnectionSet

_TOKEN = re.compile(r"^([rf])(\d+)$")


@total_ordering
@dataclass(frozen=True)
class DihedralElement:
    """a^rot * b^refl, ordered by vertex index"""
    rot: int
    refl: int = 0

    def __post_init__(self):
        if self.refl not in (0, 1) or self.rot < 0:
            raise ValueError(f"invalid dihedral element ({self.rot}, {self.refl})")

    @property
    def is_reflection(self) -> bool:
        return self.refl == 1

    @property
    def is_identity(self) -> bool:
        return self.rot == 0 and self.refl == 0

    def index(self, n: int) -> int:
        return self.rot + n * self.refl

    def __str__(self) -> str:
        return format_element(self)

    def __lt__(self, other: "DihedralElement") -> bool:
        return (self.refl, self.rot) < (other.refl, other.rot)


IDENTITY = DihedralElement(0, 0)


def element(rot: int, refl: int, n: int) -> DihedralElement:
    """Element with the rotation exponent reduced mod n"""
    return DihedralElement(rot % n, refl & 1)


def element_at(index: int, n: int) -> DihedralElement:
    if not 0 <= index < 2 * n:
        raise ValueError(f"vertex {index} out of range for n={n}")
    return DihedralElement(index % n, index // n)


def format_element(x: DihedralElement) -> str:
    return f"{'f' if x.refl else 'r'}{x.rot}"


def parse_element(token: str, n: int) -> DihedralElement:
    """Parse r<i> or f<i>; the exponent must already be in [0, n)"""
    match = _TOKEN.match(token.strip())
    if not match:
        raise ValueError(f"bad element token {token!r}")
    rot = int(match.group(2))
    if rot >= n:
        raise ValueError(f"exponent {rot} out of range for n={n}")
    return DihedralElement(rot, 1 if match.group(1) == "f" else 0)


def mul(x: DihedralElement, y: DihedralElement, n: int) -> DihedralElement:
    # b a^j = a^-j b
    if x.refl:
        return DihedralElement((x.rot - y.rot) % n, 1 - y.refl)
    return DihedralElement((x.rot + y.rot) % n, y.refl)


def inverse(x: DihedralElement, n: int) -> DihedralElement:
    if x.refl:
        return x
    return DihedralElement(-x.rot % n, 0)


def conjugate(x: DihedralElement, g: DihedralElement, n: int) -> DihedralElement:
    """x^g = g^-1 x g"""
    return mul(mul(inverse(g, n), x, n), g, n)


def power(x: DihedralElement, k: int, n: int) -> DihedralElement:
    if x.refl:
        return x if k % 2 else IDENTITY
    return DihedralElement(x.rot * k % n, 0)


def element_order(x: DihedralElement, n: int) -> int:
    if x.refl:
        return 2
    return n // gcd(x.rot, n)


@dataclass(frozen=True)
class ConjClass:
    representative: DihedralElement
    members: FrozenSet[DihedralElement]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: DihedralElement) -> bool:
        return x in self.members

    def sorted_members(self) -> List[DihedralElement]:
        return sorted(self.members)


def conjugacy_class(x: DihedralElement, n: int) -> ConjClass:
    """
    Closed-form class of x.

    n odd: all reflections form one class.
    n even: reflections split by the parity of their exponent.
    Rotations: {a^i, a^-i}.
    """
    if not x.refl:
        members = {x, DihedralElement(-x.rot % n, 0)}
    elif n % 2:
        members = {DihedralElement(i, 1) for i in range(n)}
    else:
        members = {DihedralElement(i, 1) for i in range(x.rot % 2, n, 2)}
    return ConjClass(x, frozenset(members))


def conjugacy_classes(n: int) -> List[ConjClass]:
    """All classes, ordered by the smallest vertex index they contain"""
    seen = set()
    classes = []
    for x in DihedralGroup(n).elements():
        if x not in seen:
            cls = conjugacy_class(x, n)
            seen |= cls.members
            classes.append(cls)
    return classes


def right_regular(g: DihedralElement, n: int) -> Permutation:
    """R(g): x -> x g on the vertex indexing"""
    return Permutation(
        [mul(element_at(v, n), g, n).index(n) for v in range(2 * n)], check=False
    )


def left_regular(g: DihedralElement, n: int) -> Permutation:
    """L(g): x -> g^-1 x on the vertex indexing"""
    gi = inverse(g, n)
    return Permutation(
        [mul(gi, element_at(v, n), n).index(n) for v in range(2 * n)], check=False
    )


def inversion_permutation(n: int) -> Permutation:
    """x -> x^-1 on the vertex indexing"""
    return Permutation(
        [inverse(element_at(v, n), n).index(n) for v in range(2 * n)], check=False
    )


@dataclass(frozen=True)
class GroupAutomorphism:
    """The automorphism a -> a^j, b -> a^i b"""
    j: int
    i: int
    n: int

    def __post_init__(self):
        if gcd(self.j, self.n) != 1:
            raise ValueError(f"j={self.j} is not a unit mod {self.n}")

    @classmethod
    def theta(cls, i: int, n: int) -> "GroupAutomorphism":
        """Conjugation-like map fixing a and sending b to a^i b"""
        return cls(1, i % n, n)

    @classmethod
    def tau(cls, j: int, n: int) -> "GroupAutomorphism":
        return cls(j % n, 0, n)

    @classmethod
    def identity(cls, n: int) -> "GroupAutomorphism":
        return cls(1, 0, n)

    def apply(self, x: DihedralElement) -> DihedralElement:
        return DihedralElement((self.j * x.rot + self.i * x.refl) % self.n, x.refl)

    def then(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """Apply self, then other"""
        return GroupAutomorphism(
            other.j * self.j % self.n, (other.j * self.i + other.i) % self.n, self.n
        )

    def as_permutation(self) -> Permutation:
        return Permutation(
            [self.apply(element_at(v, self.n)).index(self.n) for v in range(2 * self.n)],
            check=False,
        )

    @property
    def is_identity(self) -> bool:
        return self.j % self.n == 1 % self.n and self.i == 0

    def __str__(self) -> str:
        return f"(a->r{self.j % self.n}, b->f{self.i})"


def all_group_automorphisms(n: int) -> List[GroupAutomorphism]:
    """
    Every automorphism of D_2n, n * phi(n) of them.

    Raises:
        DegenerateGroupError: n = 2, where <a> is not characteristic
    """
    if n < 3:
        raise DegenerateGroupError(n)
    return [GroupAutomorphism(j, i, n) for j in range(1, n) if gcd(j, n) == 1 for i in range(n)]


def aut_G_S(n: int, S: "ConnectionSet") -> List[GroupAutomorphism]:
    """Automorphisms of D_2n fixing the connection set setwise"""
    members = set(S.elements())
    return [phi for phi in all_group_automorphisms(n) if {phi.apply(x) for x in members} == members]


class DihedralGroup:
    """D_2n = <a, b | a^n = b^2 = 1, a^b = a^-1>"""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        self.n = n

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def k(self) -> Optional[int]:
        return self.n // 2 if self.n % 2 == 0 else None

    @property
    def a(self) -> DihedralElement:
        return DihedralElement(1 % self.n, 0)

    @property
    def b(self) -> DihedralElement:
        return DihedralElement(0, 1)

    def elements(self) -> Iterator[DihedralElement]:
        for v in range(2 * self.n):
            yield element_at(v, self.n)

    def rotations(self) -> List[DihedralElement]:
        return [DihedralElement(i, 0) for i in range(self.n)]

    def reflections(self) -> List[DihedralElement]:
        return [DihedralElement(i, 1) for i in range(self.n)]

    def rotations_of_order(self, d: int) -> List[DihedralElement]:
        return [x for x in self.rotations() if element_order(x, self.n) == d]

    def index(self, x: DihedralElement) -> int:
        return x.index(self.n)

    def element_at(self, index: int) -> DihedralElement:
        return element_at(index, self.n)

    def mul(self, x: DihedralElement, y: DihedralElement) -> DihedralElement:
        return mul(x, y, self.n)

    def subgroup(self, gens: Iterable[DihedralElement]) -> FrozenSet[DihedralElement]:
        """Subgroup closure of gens"""
        gens = list(gens)
        seen = {IDENTITY}
        queue = [IDENTITY]
        for x in queue:
            for g in gens:
                y = mul(x, g, self.n)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def right_regular_group(self) -> PermutationGroup:
        return PermutationGroup([right_regular(self.a, self.n), right_regular(self.b, self.n)], degree=self.order)

    def left_regular_group(self) -> PermutationGroup:
        return PermutationGroup([left_regular(self.a, self.n), left_regular(self.b, self.n)], degree=self.order)

    def __repr__(self) -> str:
        return f"DihedralGroup(n={self.n})"


def format_elements(elements: Sequence[DihedralElement]) -> List[str]:
    return [format_element(x) for x in sorted(elements)]
