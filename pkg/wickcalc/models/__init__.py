from .abstract import AbstractModel
from .base import LinearModel, ModelDictionary
from .bcs import BcsModel, bcs_contraction
from .bec import BecModel, bec_decompose
from .fermi_sea import FermiSeaModel, fermi_sea_contraction
from .loader import build_model, load_model_file

__all__ = [
    'AbstractModel',
    'BcsModel',
    'BecModel',
    'FermiSeaModel',
    'LinearModel',
    'ModelDictionary',
    'bcs_contraction',
    'bec_decompose',
    'build_model',
    'fermi_sea_contraction',
    'load_model_file',
]
