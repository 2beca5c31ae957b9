from decimal import ROUND_FLOOR, Decimal, InvalidOperation
from typing import Iterable, List, Optional

import pandas as pd

from app.detector.unit_gazetteer import UnitGazetteer
from config.default import STATS_CSV_HEADER
from domain.errors import ConfigError, UnknownDimensionError
from domain.models import Quantity, SentenceExtractions
from utils.logger import setup_logger

logger = setup_logger(__name__)


def parse_bin_width(raw: str) -> Decimal:
    try:
        width = Decimal(str(raw).strip())
    except InvalidOperation:
        raise ConfigError(f"bin width is not a number: {raw!r}") from None
    if not width.is_finite() or width <= 0:
        raise ConfigError(f"bin width must be positive, got {raw!r}")
    return width


def bin_lower_bound(value: Decimal, width: Decimal) -> Decimal:
    """Left-closed bins: floor(value / width) * width."""
    return (value / width).to_integral_value(rounding=ROUND_FLOOR) * width


def format_bound(value: Decimal) -> str:
    text = format(value.normalize(), "f")
    return "0" if text in ("-0", "") else text


def quantities_of(envelopes: Iterable[SentenceExtractions]) -> List[Quantity]:
    return [m.quantity for e in envelopes for m in e.measurements]


class StatsManager:
    """
    Histogram export of normalized measurement values, one dimension (or base unit) at a time.
    """

    def __init__(self, gazetteer: UnitGazetteer):
        self.gazetteer = gazetteer

    def _select(self, quantities: Iterable[Quantity], dimension: Optional[str], unit: Optional[str]) -> List[Decimal]:
        if (dimension is None) == (unit is None):
            raise ConfigError("give exactly one of a dimension or a unit")
        if unit is not None:
            target = self.gazetteer.lookup(unit)
            if target is None:
                raise ConfigError(f"unit '{unit}' is not in the gazetteer")
            return [q.normalized_quantity for q in quantities
                    if q.normalized_unit.type == target.type and q.normalized_unit.name == target.name]
        known = self.gazetteer.dimensions()
        if dimension not in known:
            raise UnknownDimensionError(dimension, known)
        return [q.normalized_quantity for q in quantities if q.normalized_unit.type == dimension]

    def histogram(
        self,
        quantities: Iterable[Quantity],
        width: Decimal,
        dimension: Optional[str] = None,
        unit: Optional[str] = None,
    ) -> pd.DataFrame:
        """
        Counts per bin, bins keyed by their lower bound in the base unit and sorted ascending.

        :raises UnknownDimensionError: when `dimension` is not a gazetteer dimension.
        """
        values = self._select(quantities, dimension, unit)
        bins = [bin_lower_bound(v, width) for v in values]
        column, count = STATS_CSV_HEADER
        if not bins:
            return pd.DataFrame({column: pd.Series([], dtype=object), count: pd.Series([], dtype=int)})
        counts = pd.Series(bins).value_counts().to_dict()
        ordered = sorted(counts)
        frame = pd.DataFrame({
            column: [format_bound(b) for b in ordered],
            count: [int(counts[b]) for b in ordered],
        })
        logger.info(f"Histogram: {len(values)} values in {len(frame)} bins of width {width}.")
        return frame

    def histogram_csv(self, quantities: Iterable[Quantity], width: Decimal,
                      dimension: Optional[str] = None, unit: Optional[str] = None) -> str:
        return self.histogram(quantities, width, dimension, unit).to_csv(index=False, lineterminator="\n")
