"""Fixed-precision arithmetic in tame extension towers over Q_p (p odd)."""

from .element import PadicElement
from .field import (
    DEFAULT_PRECISION,
    Eisenstein,
    FieldDesc,
    Step,
    Unramified,
    embed,
    embedding,
    extend,
    make_field,
    qp_field,
    teichmuller,
)
from .involution import Involution, involutions
from .poly import hensel_lift, is_square, norm_quadratic, sqrt, square_witness
from .relative import PowerBasis, generates, relative_norm

__all__ = [
    "DEFAULT_PRECISION",
    "Eisenstein",
    "FieldDesc",
    "Involution",
    "PadicElement",
    "PowerBasis",
    "Step",
    "Unramified",
    "embed",
    "embedding",
    "extend",
    "generates",
    "hensel_lift",
    "involutions",
    "is_square",
    "make_field",
    "norm_quadratic",
    "qp_field",
    "relative_norm",
    "sqrt",
    "square_witness",
    "teichmuller",
]
