"""Formal model: every field splits into symbolic A+ and A- parts."""
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from ..algebra.operators import OperatorSymbol, Statistics
from ..errors import UnknownContraction
from .base import ModelDictionary

logger = logging.getLogger(__name__)

FieldKey = Tuple[str, object, int]


class AbstractModel(ModelDictionary):
    """Reference state known only through a declared contraction table.

    ``contractions`` maps ordered pairs of field symbols (or their field
    keys) to <gs|A B|gs>. Time labels are ignored; an abstract state has no
    dynamics.
    """

    name = "abstract"
    has_anomalous = True

    def __init__(
        self,
        statistics: Statistics = Statistics.FERMI,
        contractions: Optional[Mapping[Tuple[object, object], complex]] = None,
        n_modes: Optional[int] = None,
    ):
        super().__init__(statistics, n_modes)
        self._table: Dict[Tuple[FieldKey, FieldKey], complex] = {}
        for (left, right), value in (contractions or {}).items():
            self._table[(_key(left), _key(right))] = complex(value)

    @classmethod
    def random(
        cls,
        statistics: Statistics,
        symbols: Iterable[OperatorSymbol],
        rng: np.random.Generator,
    ) -> "AbstractModel":
        """Model with a random complex value for every ordered pair of the given fields."""
        fields = sorted({s.field_key for s in symbols}, key=lambda k: (k[0], str(k[1]), k[2]))
        table = {}
        for left in fields:
            for right in fields:
                table[(left, right)] = complex(rng.normal(), rng.normal())
        return cls(statistics, table)

    def describe(self) -> Dict[str, object]:
        info = super().describe()
        info["declared_contractions"] = len(self._table)
        return info

    def decompose(self, symbol: OperatorSymbol) -> List[Tuple[complex, OperatorSymbol]]:
        self.check_mode(symbol)
        if symbol.is_pure:
            return [(1 + 0j, symbol)]
        return [(1 + 0j, symbol.component(1)), (1 + 0j, symbol.component(-1))]

    def contract(self, a: OperatorSymbol, b: OperatorSymbol) -> complex:
        if a.sign_class > 0 or b.sign_class < 0:
            return 0j
        try:
            return self._table[(a.field_key, b.field_key)]
        except KeyError:
            raise UnknownContraction(
                f"no contraction declared for <{_describe(a.field_key)} {_describe(b.field_key)}>"
            ) from None


def _key(item: object) -> FieldKey:
    if isinstance(item, OperatorSymbol):
        return item.field_key
    return item  # type: ignore[return-value]


def _describe(key: FieldKey) -> str:
    species, base, mode = key
    dagger = "+" if getattr(base, "is_creation_type", False) else ""
    return f"{species}{dagger}({mode + 1})"
