# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Knot construction trees, braid closures, fibered presentations and the knot catalog.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator

from .errors import (
    InvalidAutomorphismError,
    NotAKnotGroupError,
    ParseError,
    UnknownKnotError,
)
from .fox import characteristic_polynomial, classical_alexander
from .words import (
    DEFAULT_NAMES,
    Automorphism,
    CyclicOracle,
    FreeByCyclicOracle,
    GroupPresentation,
    NormalFormOracle,
    Word,
    format_word,
    reduce_word,
    shift_word,
    word_inverse,
)

HAS_SYMPY = True

try:
    import sympy
except ImportError:
    HAS_SYMPY = False

logger = logging.getLogger(__name__)

DILATATION_4_1 = (3 + math.sqrt(5)) / 2


class KnotSpec:
    """Node of a knot construction tree."""

    type: str = ""

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError

    @staticmethod
    def from_dict(data: dict[str, Any]) -> KnotSpec:
        return knot_from_dict(data)

    def leaves(self) -> Iterator[KnotSpec]:
        yield self


@dataclass(frozen=True)
class CatalogKnot(KnotSpec):
    name: str

    type = "catalog"

    def __post_init__(self):
        canonical_name(self.name)

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "name": self.name}


@dataclass(frozen=True)
class BraidKnot(KnotSpec):
    """
    Closure of a braid. ``word`` holds signed generator indices: ``k`` is ``σ_k`` and
    ``-k`` is ``σ_k⁻¹``.
    """

    word: tuple[int, ...]
    strands: int

    type = "braid"

    def __post_init__(self):
        if self.strands < 1:
            raise ParseError(f"a braid needs at least one strand, got {self.strands}")
        for letter in self.word:
            if letter == 0 or abs(letter) >= self.strands:
                raise ParseError(f"braid generator s{abs(letter)} does not exist on {self.strands} strands")

    def format(self) -> str:
        return " ".join(f"s{letter}" if letter > 0 else f"s{-letter}^-1" for letter in self.word)

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "word": self.format(), "strands": self.strands}


@dataclass(frozen=True)
class FiberedKnot(KnotSpec):
    genus: int
    monodromy: Automorphism

    type = "fibered"

    def to_dict(self) -> dict[str, Any]:
        names = fiber_names(self.genus)
        return {
            "type": self.type,
            "genus": self.genus,
            "images": [format_word(w, names) for w in self.monodromy.images],
            "inverse_images": [format_word(w, names) for w in self.monodromy.inverse_images],
        }


@dataclass(frozen=True)
class SumKnot(KnotSpec):
    left: KnotSpec
    right: KnotSpec

    type = "sum"

    def leaves(self) -> Iterator[KnotSpec]:
        yield from self.left.leaves()
        yield from self.right.leaves()

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "left": self.left.to_dict(), "right": self.right.to_dict()}


@dataclass(frozen=True)
class CableKnot(KnotSpec):
    p: int
    q: int
    companion: KnotSpec

    type = "cable"

    def __post_init__(self):
        if self.p == 0 or math.gcd(self.p, self.q) != 1:
            raise ParseError(f"cable parameters ({self.p}, {self.q}) need p != 0 and gcd(p, q) = 1")

    def leaves(self) -> Iterator[KnotSpec]:
        yield from self.companion.leaves()

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "p": self.p, "q": self.q, "companion": self.companion.to_dict()}


@dataclass(frozen=True)
class MirrorKnot(KnotSpec):
    knot: KnotSpec

    type = "mirror"

    def leaves(self) -> Iterator[KnotSpec]:
        yield from self.knot.leaves()

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "knot": self.knot.to_dict()}


@dataclass(frozen=True)
class ReverseKnot(KnotSpec):
    knot: KnotSpec

    type = "reverse"

    def leaves(self) -> Iterator[KnotSpec]:
        yield from self.knot.leaves()

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "knot": self.knot.to_dict()}


def _require(data: dict[str, Any], key: str) -> Any:
    if key not in data:
        raise ParseError(f"knot spec of type {data.get('type')!r} is missing {key!r}")
    return data[key]


def _integer(data: dict[str, Any], key: str) -> int:
    value = _require(data, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"knot spec field {key!r} must be an integer, got {value!r}")
    return value


def knot_from_dict(data: dict[str, Any]) -> KnotSpec:
    """Build a knot tree from its JSON form, for example ``{"type": "catalog", "name": "4_1"}``."""
    if not isinstance(data, dict):
        raise ParseError(f"knot spec must be an object, got {type(data).__name__}")

    kind = data.get("type")
    if kind == "catalog":
        return CatalogKnot(str(_require(data, "name")))
    if kind == "braid":
        braid = parse_braid(str(_require(data, "word")))
        if "strands" in data:
            return BraidKnot(braid.word, _integer(data, "strands"))
        return braid
    if kind == "fibered":
        genus = _integer(data, "genus")
        names = data.get("names") or fiber_names(genus)
        monodromy = Automorphism.from_text(_require(data, "images"), _require(data, "inverse_images"), names)
        return FiberedKnot(genus, monodromy)
    if kind == "sum":
        if "summands" in data:
            return connected_sum(*(knot_from_dict(item) for item in data["summands"]))
        return SumKnot(knot_from_dict(_require(data, "left")), knot_from_dict(_require(data, "right")))
    if kind == "cable":
        return CableKnot(_integer(data, "p"), _integer(data, "q"), knot_from_dict(_require(data, "companion")))
    if kind == "mirror":
        return MirrorKnot(knot_from_dict(_require(data, "knot")))
    if kind == "reverse":
        return ReverseKnot(knot_from_dict(_require(data, "knot")))
    raise ParseError(f"unknown knot spec type {kind!r}")


def connected_sum(*knots: KnotSpec) -> KnotSpec:
    if not knots:
        raise ParseError("a connected sum needs at least one summand")
    result = knots[0]
    for knot in knots[1:]:
        result = SumKnot(result, knot)
    return result


_BRAID_TOKEN_RE = re.compile(r"s(\d+)(?:\^\(?(-?\d+)\)?)?")


def parse_braid(text: str) -> BraidKnot:
    """
    Parse whitespace separated braid tokens ``s<k>`` and ``s<k>^-1`` (any nonzero power
    is accepted). The strand count is one more than the largest generator index.
    """
    word: list[int] = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        parsed = _BRAID_TOKEN_RE.fullmatch(token)
        if parsed is None:
            raise ParseError(f"malformed braid token {token!r}", position=match.start())
        index = int(parsed.group(1))
        power = int(parsed.group(2)) if parsed.group(2) is not None else 1
        if index < 1 or power == 0:
            raise ParseError(f"malformed braid token {token!r}", position=match.start())
        word.extend([index if power > 0 else -index] * abs(power))
    strands = max((abs(letter) for letter in word), default=0) + 1
    return BraidKnot(tuple(word), strands)


def braid_permutation(braid: BraidKnot) -> list[int]:
    """Position at the bottom of the strand that starts at each top position."""
    position = list(range(braid.strands))
    for letter in braid.word:
        i = abs(letter) - 1
        for start, current in enumerate(position):
            if current == i:
                position[start] = i + 1
            elif current == i + 1:
                position[start] = i
    return position


def braid_components(braid: BraidKnot) -> int:
    """Number of components of the closure, the cycle count of the braid permutation."""
    permutation = braid_permutation(braid)
    seen = [False] * braid.strands
    cycles = 0
    for start in range(braid.strands):
        if seen[start]:
            continue
        cycles += 1
        current = start
        while not seen[current]:
            seen[current] = True
            current = permutation[current]
    return cycles


def trace_components(braid: BraidKnot) -> int:
    """Count closure components by walking every strand crossing by crossing."""
    visited: set[int] = set()
    components = 0
    for start in range(braid.strands):
        if start in visited:
            continue
        components += 1
        position = start
        while position not in visited:
            visited.add(position)
            for letter in braid.word:
                i = abs(letter) - 1
                if position == i:
                    position = i + 1
                elif position == i + 1:
                    position = i
    return components


def wirtinger_from_braid(braid: BraidKnot) -> GroupPresentation:
    """
    Wirtinger presentation of the braid closure, one generator per arc.

    ``σ_k`` carries the strand at position k over the one at position k+1; the under
    strand starts a new arc ``y = x_k x_{k+1} x_k⁻¹``. For ``σ_k⁻¹`` the new arc is
    ``y = x_{k+1}⁻¹ x_k x_{k+1}``. The last crossing relator is dropped, or a trivial one
    when the closure makes it so.
    """
    if braid_components(braid) != 1:
        raise NotAKnotGroupError(
            f"closure of braid {braid.format()!r} has {braid_components(braid)} components",
            details={"components": braid_components(braid)},
        )

    arcs = braid.strands
    current = list(range(braid.strands))
    crossings: list[tuple[int, tuple[tuple[int, int], ...]]] = []
    for letter in braid.word:
        i = abs(letter) - 1
        left, right = current[i], current[i + 1]
        new_arc = arcs
        arcs += 1
        if letter > 0:
            crossings.append((new_arc, ((left, 1), (right, 1), (left, -1))))
            current[i], current[i + 1] = new_arc, left
        else:
            crossings.append((new_arc, ((right, -1), (left, 1), (right, 1))))
            current[i], current[i + 1] = right, new_arc

    parent = list(range(arcs))

    def find(arc: int) -> int:
        while parent[arc] != arc:
            parent[arc] = parent[parent[arc]]
            arc = parent[arc]
        return arc

    for top, bottom in enumerate(current):
        parent[find(bottom)] = find(top)

    classes = sorted({find(arc) for arc in range(arcs)})
    index = {root: i for i, root in enumerate(classes)}

    relators: list[Word] = []
    for new_arc, conjugate in crossings:
        letters = [(index[find(new_arc)], -1)] + [(index[find(arc)], exponent) for arc, exponent in conjugate]
        relators.append(reduce_word(letters))

    if relators:
        trivial = [i for i, relator in enumerate(relators) if not relator]
        del relators[trivial[0] if trivial else len(relators) - 1]

    generator_count = len(classes)
    names = tuple(f"x{i + 1}" for i in range(generator_count))
    presentation = GroupPresentation(generator_count, tuple(relators), names)
    if presentation.deficiency != 1:
        raise NotAKnotGroupError(
            f"Wirtinger presentation of {braid.format()!r} has deficiency {presentation.deficiency}",
        )
    return presentation


def is_trivial_braid(braid: BraidKnot) -> bool:
    """
    True when the closure destabilizes to the unknot: every generator of the braid
    group occurs exactly once, with exponent ±1.
    """
    used = sorted(abs(letter) for letter in braid.word)
    return used == list(range(1, braid.strands))


def fiber_names(genus: int) -> tuple[str, ...]:
    if 2 * genus <= len(DEFAULT_NAMES):
        return tuple(DEFAULT_NAMES[: 2 * genus])
    return tuple(f"a{i + 1}" for i in range(2 * genus))


@dataclass(frozen=True)
class OraclePresentation:
    """Deficiency-one presentation paired with a word-problem oracle for its group."""

    presentation: GroupPresentation
    oracle: NormalFormOracle


def fibered_presentation(genus: int, monodromy: Automorphism) -> OraclePresentation:
    """
    Presentation ``< z, a_1 .. a_2g | z a_i z⁻¹ φ(a_i)⁻¹ >`` of the mapping torus of ``φ``.

    Letter 0 is ``z``; fiber letter ``i`` becomes generator ``i + 1``.
    """
    if genus < 1:
        raise InvalidAutomorphismError(f"fiber genus must be at least 1, got {genus}")
    if monodromy.rank != 2 * genus:
        raise InvalidAutomorphismError(
            f"monodromy acts on F_{monodromy.rank}, a genus {genus} fiber has F_{2 * genus}"
        )

    relators = []
    for i, image in enumerate(monodromy.images):
        relators.append(reduce_word(((0, 1), (i + 1, 1), (0, -1)) + word_inverse(shift_word(image, 1))))
    names = ("z",) + fiber_names(genus)
    presentation = GroupPresentation(2 * genus + 1, tuple(relators), names)
    return OraclePresentation(presentation, FreeByCyclicOracle(monodromy))


def unknot_presentation() -> OraclePresentation:
    presentation = GroupPresentation(2, (((0, 1), (1, -1)),), ("g", "h"))
    return OraclePresentation(presentation, CyclicOracle((1, 1)))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    genus: int
    volume: float
    fibered: bool
    exp_vol_over_6pi: float
    monodromy: Automorphism | None = None
    notes: str = ""
    braid: str | None = None
    alexander: tuple[int, ...] | None = None
    monomial_bound: float | None = None
    lambda_symbol: str | None = None
    torus: tuple[int, int] | None = None
    amphichiral: bool = False

    @property
    def hyperbolic(self) -> bool:
        return self.volume > 0

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "name": self.name,
            "genus": self.genus,
            "volume": self.volume,
            "fibered": self.fibered,
            "exp_vol_over_6pi": self.exp_vol_over_6pi,
            "braid": self.braid,
            "alexander": list(self.alexander) if self.alexander is not None else None,
            "notes": self.notes,
        }
        if self.monodromy is not None:
            names = fiber_names(self.genus)
            result["monodromy"] = {
                "images": [format_word(w, names) for w in self.monodromy.images],
                "inverse_images": [format_word(w, names) for w in self.monodromy.inverse_images],
            }
        return result


def _entry(name: str, genus: int, volume: float, fibered: bool, **kwargs: Any) -> CatalogEntry:
    return CatalogEntry(name, genus, volume, fibered, math.exp(volume / (6 * math.pi)), **kwargs)


@lru_cache(maxsize=None)
def _static_entries() -> dict[str, CatalogEntry]:
    trefoil = Automorphism.from_text(["a b", "a^-1"], ["b^-1", "b a"])
    figure_eight = Automorphism.from_text(["a b", "b a b"], ["a^2 b^-1", "b a^-1"])
    return {
        "unknot": _entry(
            "unknot",
            0,
            0.0,
            True,
            braid="",
            alexander=(1,),
            torus=(1, 1),
            amphichiral=True,
            notes="invariant is the constant map 1",
        ),
        "3_1": _entry(
            "3_1",
            1,
            0.0,
            True,
            monodromy=trefoil,
            braid="s1^3",
            alexander=(1, -1, 1),
            lambda_symbol=None,
            torus=(2, 3),
            notes="torus knot T(2,3); periodic monodromy of order 6",
        ),
        "4_1": _entry(
            "4_1",
            1,
            2.029883212819307,
            True,
            monodromy=figure_eight,
            braid="s1 s2^-1 s1 s2^-1",
            alexander=(1, -3, 1),
            monomial_bound=DILATATION_4_1,
            lambda_symbol="lambda_F",
            amphichiral=True,
            notes="only hyperbolic fibered knot of genus 1; pseudo-Anosov monodromy with dilatation (3+sqrt5)/2",
        ),
        "5_2": _entry(
            "5_2",
            1,
            2.828122088330783,
            False,
            braid="s1^3 s2 s1^-1 s2",
            alexander=(2, -3, 2),
            notes="genus one, not fibered; volume shared with K12n242 (census manifold m016)",
        ),
        "K12n242": _entry(
            "K12n242",
            5,
            2.828122088330783,
            True,
            lambda_symbol="lambda_K12n242",
            notes="fibered, genus 5; same volume as 5_2",
        ),
    }


_TORUS_RE = re.compile(r"T\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def canonical_name(name: str) -> str:
    """Resolve aliases (``4_1``, ``4-1``, ``figure-eight``...) to catalog names."""
    stripped = name.strip()
    aliases = {
        "unknot": "unknot",
        "0_1": "unknot",
        "trefoil": "3_1",
        "3_1": "3_1",
        "figure_eight": "4_1",
        "4_1": "4_1",
        "5_2": "5_2",
        "k12n242": "K12n242",
    }
    key = stripped.lower().replace("-", "_")
    if key in aliases:
        return aliases[key]
    if _TORUS_RE.fullmatch(stripped):
        return stripped.replace(" ", "")
    raise UnknownKnotError(f"unknown knot {name!r}", details={"name": name})


def _torus_entry(name: str, p: int, q: int) -> CatalogEntry:
    if p == 0 or q == 0 or math.gcd(p, q) != 1:
        raise UnknownKnotError(f"{name} is not a torus knot, need nonzero coprime p and q")
    a, b = sorted((abs(p), abs(q)))
    if a == 1:
        return catalog("unknot")
    if (a, b) == (2, 3):
        trefoil = catalog("3_1")
        return CatalogEntry(
            name,
            1,
            0.0,
            True,
            1.0,
            monodromy=trefoil.monodromy,
            braid=trefoil.braid,
            alexander=trefoil.alexander,
            torus=(p, q),
            notes="torus knot, isotopic to the trefoil or its mirror",
        )
    return _entry(
        name,
        (a - 1) * (b - 1) // 2,
        0.0,
        True,
        alexander=torus_alexander(a, b),
        torus=(p, q),
        notes="torus knot",
    )


def torus_alexander(p: int, q: int) -> tuple[int, ...]:
    """Coefficients of (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), lowest degree first."""
    t = sympy.Symbol("t")
    quotient = sympy.cancel((t ** (p * q) - 1) * (t - 1) / ((t**p - 1) * (t**q - 1)))
    return tuple(int(c) for c in reversed(sympy.Poly(quotient, t).all_coeffs()))


def torus_presentation(p: int, q: int) -> GroupPresentation:
    return GroupPresentation(2, (((0, p), (1, -q)),), ("x", "y"))


@lru_cache(maxsize=None)
def catalog(name: str) -> CatalogEntry:
    """
    Catalog entry of a named knot. Entries with a monodromy pass the validation gate
    before they are handed out.

    :raises UnknownKnotError: when the name is not cataloged
    """
    canonical = canonical_name(name)
    match = _TORUS_RE.fullmatch(canonical)
    if match:
        return _torus_entry(canonical, int(match.group(1)), int(match.group(2)))
    entry = _static_entries()[canonical]
    if entry.monodromy is not None:
        validate_monodromy(entry)
    return entry


def catalog_names() -> list[str]:
    return list(_static_entries())


def validate_monodromy(entry: CatalogEntry) -> None:
    """
    Check a stored monodromy: the fibered presentation must give the entry's Alexander
    polynomial, the abelianized action must have the matching trace and, where a
    dilatation is recorded, its largest eigenvalue must be that dilatation.
    """
    monodromy = entry.monodromy
    if monodromy is None or entry.alexander is None:
        return

    fibered = fibered_presentation(entry.genus, monodromy)
    polynomial = classical_alexander(fibered.presentation)
    coefficients = tuple(int(c) for c in reversed(polynomial.all_coeffs()))
    if coefficients != entry.alexander:
        raise InvalidAutomorphismError(
            f"monodromy of {entry.name} gives Alexander polynomial {coefficients}, expected {entry.alexander}",
            details={"knot": entry.name},
        )

    characteristic = tuple(int(c) for c in reversed(characteristic_polynomial(monodromy).all_coeffs()))
    if characteristic != entry.alexander and tuple(-c for c in characteristic) != entry.alexander:
        raise InvalidAutomorphismError(
            f"abelianized monodromy of {entry.name} has characteristic polynomial {characteristic}",
            details={"knot": entry.name},
        )
    if monodromy.trace() != -entry.alexander[1] // entry.alexander[0]:
        raise InvalidAutomorphismError(f"abelianized monodromy of {entry.name} has trace {monodromy.trace()}")

    if entry.monomial_bound is not None:
        spectral_radius = max(abs(complex(root)) for root in characteristic_polynomial(monodromy).nroots())
        if not math.isclose(spectral_radius, entry.monomial_bound, rel_tol=1e-9):
            raise InvalidAutomorphismError(
                f"abelianized monodromy of {entry.name} has spectral radius {spectral_radius}",
                details={"knot": entry.name, "expected": entry.monomial_bound},
            )
    logger.debug("monodromy of %s passed validation", entry.name)


def entry_presentation(entry: CatalogEntry) -> GroupPresentation:
    """Some presentation of the entry's group, used for the classical Alexander polynomial."""
    if entry.name == "unknot":
        return unknot_presentation().presentation
    if entry.braid is not None:
        return wirtinger_from_braid(parse_braid(entry.braid))
    if entry.torus is not None:
        return torus_presentation(*entry.torus)
    if entry.monodromy is not None:
        return fibered_presentation(entry.genus, entry.monodromy).presentation
    raise UnknownKnotError(f"no presentation is known for {entry.name}")


def nth_prime(n: int) -> int:
    """n-th prime counted from zero, so ``nth_prime(0) == 2``."""
    if n < 0:
        raise ParseError(f"prime index must be nonnegative, got {n}")
    return int(sympy.prime(n + 1))


@dataclass(frozen=True)
class KnotFamily:
    n: int
    p: int
    J: KnotSpec
    K: KnotSpec

    def __iter__(self) -> Iterator[KnotSpec]:
        return iter((self.J, self.K))


def build_family(n: int) -> KnotFamily:
    """
    ``J_n = 4_1 # (3_1)^(p-1)`` and ``K_n = C_{p,1}(4_1)`` for the n-th prime p.
    """
    p = nth_prime(n)
    figure_eight = CatalogKnot("4_1")
    summands = [figure_eight] + [CatalogKnot("3_1")] * (p - 1)
    return KnotFamily(n, p, connected_sum(*summands), CableKnot(p, 1, figure_eight))
