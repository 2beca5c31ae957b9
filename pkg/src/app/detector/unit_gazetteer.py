from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from config.default import DEFAULT_GAZETTEER_PATH
from domain.errors import GazetteerError
from domain.models import NormalizedUnit
from utils.logger import setup_logger

logger = setup_logger(__name__)

GAZETTEER_COLUMNS = 6


class UnitGazetteer:
    """
    Case-sensitive map from unit surface form ("nm", "°C", "degrees Celsius") to the
    normalized unit template it converts to. Immutable once built.
    """

    def __init__(self, entries: Mapping[str, NormalizedUnit]):
        for surface, unit in entries.items():
            if unit.factor_to_base <= 0:
                raise GazetteerError(f"unit '{surface}' has non-positive factor {unit.factor_to_base}")
        self._entries: Dict[str, NormalizedUnit] = dict(entries)
        # Longest surface forms first so multi-token and prefixed units win
        self._by_length: Tuple[str, ...] = tuple(sorted(self._entries, key=lambda s: (-len(s), s)))

    def lookup(self, surface: str) -> Optional[NormalizedUnit]:
        return self._entries.get(surface)

    def __contains__(self, surface: str) -> bool:
        return surface in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def surfaces(self) -> Tuple[str, ...]:
        return self._by_length

    def dimensions(self) -> List[str]:
        return sorted({unit.type for unit in self._entries.values()})

    def items(self) -> Iterable[Tuple[str, NormalizedUnit]]:
        return self._entries.items()

    def merged(self, other: "UnitGazetteer") -> "UnitGazetteer":
        entries = dict(self._entries)
        entries.update(other._entries)
        return UnitGazetteer(entries)


def _decimal(value: str, column: str, line_number: int) -> Decimal:
    try:
        return Decimal(value.strip())
    except InvalidOperation:
        raise GazetteerError(f"{column} is not a number: {value!r}", line_number) from None


def parse_gazetteer(content: str) -> UnitGazetteer:
    """
    Parses the tab-separated gazetteer table: surface form, base name, dimension,
    system, factor, offset. Blank lines and lines starting with '#' are ignored.

    :raises GazetteerError: on a malformed record or a non-positive factor.
    """
    entries: Dict[str, NormalizedUnit] = {}
    for line_number, line in enumerate(content.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != GAZETTEER_COLUMNS:
            raise GazetteerError(
                f"expected {GAZETTEER_COLUMNS} tab-separated fields, found {len(fields)}", line_number
            )
        surface, name, dimension, system, factor, offset = fields
        if not surface:
            raise GazetteerError("empty surface form", line_number)
        unit = NormalizedUnit(
            name=name.strip(),
            type=dimension.strip(),
            system=system.strip(),
            factor_to_base=_decimal(factor, "factor", line_number),
            offset_to_base=_decimal(offset, "offset", line_number),
        )
        if unit.factor_to_base <= 0:
            raise GazetteerError(f"factor must be > 0 for '{surface}'", line_number)
        if surface in entries:
            logger.warning(f"gazetteer line {line_number}: duplicate surface form '{surface}' overrides earlier entry")
        entries[surface] = unit
    return UnitGazetteer(entries)


def load_gazetteer(path: Optional[Union[str, Path]] = None, extend_default: bool = False) -> UnitGazetteer:
    """
    Loads a gazetteer file (the shipped table when `path` is None). With `extend_default`,
    entries of the file are merged over the shipped table.
    """
    source = Path(path) if path else DEFAULT_GAZETTEER_PATH
    try:
        content = source.read_text(encoding="utf-8")
    except OSError as e:
        raise GazetteerError(f"cannot read gazetteer {source}: {e}") from None
    gazetteer = parse_gazetteer(content)
    if extend_default and path:
        gazetteer = load_gazetteer().merged(gazetteer)
    logger.debug(f"Loaded {len(gazetteer)} unit surface forms from {source}.")
    return gazetteer
