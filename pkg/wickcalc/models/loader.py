"""Model configuration files.

A model file is a JSON document whose ``"model"`` field selects one of the
four reference states; see ``model_file_schema.md`` next to this module.
"""
import logging
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, ValidationError, field_validator

from ..algebra.operators import Statistics
from ..errors import ModelFileError, ParseError
from .abstract import AbstractModel
from .base import ModelDictionary
from .bcs import BcsModel
from .bec import BecModel
from .fermi_sea import FermiSeaModel

logger = logging.getLogger(__name__)

# A complex number is written as a real number or as [re, im]
ComplexValue = Union[float, Tuple[float, float]]


def to_complex(value: ComplexValue) -> complex:
    if isinstance(value, (tuple, list)):
        return complex(value[0], value[1])
    return complex(value)


class ContractionEntry(BaseModel):
    """Declared value of <left right> for the abstract model."""
    left: str = Field(..., description="Single operator, e.g. 'A(1)'")
    right: str = Field(..., description="Single operator, e.g. 'A+(2)'")
    value: ComplexValue


class AbstractModelConfig(BaseModel):
    model: Literal["abstract"]
    statistics: Statistics = Statistics.FERMI
    n_modes: Optional[int] = Field(None, ge=1)
    contractions: List[ContractionEntry] = Field(default_factory=list)


class FermiSeaConfig(BaseModel):
    model: Literal["fermisea"]
    statistics: Statistics = Statistics.FERMI
    n_modes: int = Field(..., ge=1)
    n_filled: int = Field(0, ge=0)
    frequencies: Optional[List[float]] = None
    overlaps: Optional[List[List[ComplexValue]]] = None


class PairAmplitude(BaseModel):
    u: ComplexValue
    v: ComplexValue
    energy: float = 0.0
    label: Optional[str] = None


class BcsConfig(BaseModel):
    model: Literal["bcs"]
    statistics: Statistics = Statistics.FERMI
    pairs: List[PairAmplitude] = Field(..., min_length=1)

    @field_validator("statistics")
    @classmethod
    def fermions_only(cls, value: Statistics) -> Statistics:
        if value is not Statistics.FERMI:
            raise ValueError("the BCS state is fermionic")
        return value


class BecConfig(BaseModel):
    model: Literal["bec"]
    statistics: Statistics = Statistics.BOSE
    n_modes: int = Field(..., ge=1)
    density: float = Field(..., ge=0)
    volume: float = Field(1.0, gt=0)
    frequencies: Optional[List[float]] = None
    overlaps: Optional[List[List[ComplexValue]]] = None

    @field_validator("statistics")
    @classmethod
    def bosons_only(cls, value: Statistics) -> Statistics:
        if value is not Statistics.BOSE:
            raise ValueError("a condensate is bosonic")
        return value


ModelConfig = Annotated[
    Union[AbstractModelConfig, FermiSeaConfig, BcsConfig, BecConfig],
    Field(discriminator="model"),
]
_CONFIG_ADAPTER = TypeAdapter(ModelConfig)


def _matrix(rows: Optional[List[List[ComplexValue]]]) -> Optional[np.ndarray]:
    if rows is None:
        return None
    return np.array([[to_complex(x) for x in row] for row in rows], dtype=complex)


def build_model(config) -> ModelDictionary:
    """Instantiate the model a validated configuration describes."""
    if isinstance(config, AbstractModelConfig):
        from ..dsl import parse_symbols

        table = {}
        for entry in config.contractions:
            left, right = parse_symbols(entry.left), parse_symbols(entry.right)
            if len(left) != 1 or len(right) != 1:
                raise ModelFileError(f"contraction entries name one operator each, got {entry.left!r}, {entry.right!r}")
            table[(left[0], right[0])] = to_complex(entry.value)
        return AbstractModel(config.statistics, table, config.n_modes)
    if isinstance(config, FermiSeaConfig):
        return FermiSeaModel(config.n_modes, config.n_filled, _matrix(config.overlaps),
                             config.frequencies, config.statistics)
    if isinstance(config, BcsConfig):
        return BcsModel(
            [(to_complex(p.u), to_complex(p.v)) for p in config.pairs],
            energies=[p.energy for p in config.pairs],
            labels=[p.label or str(k + 1) for k, p in enumerate(config.pairs)],
        )
    if isinstance(config, BecConfig):
        return BecModel(config.n_modes, config.density, config.volume,
                        _matrix(config.overlaps), config.frequencies)
    raise ModelFileError(f"unsupported configuration {type(config).__name__}")


def parse_model_config(text: str):
    try:
        return _CONFIG_ADAPTER.validate_json(text)
    except ValidationError as e:
        raise ModelFileError(f"invalid model file: {e}") from e


def load_model_file(path: Union[str, Path]) -> ModelDictionary:
    """Read, validate and build a model file.

    Raises:
        ModelFileError: if the file is missing or fails validation
    """
    path = Path(path)
    logger.info(f"Loading model file {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"cannot read model file {path}: {e}") from e
    try:
        return build_model(parse_model_config(text))
    except ParseError as e:
        raise ModelFileError(f"bad operator in {path}: {e}") from e
