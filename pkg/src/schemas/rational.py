from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

from src.core.rational import as_rational, format_rational


def _coerce_rational(value: Any) -> Fraction:
    try:
        return as_rational(value)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


RationalField = Annotated[
    Fraction,
    PlainValidator(_coerce_rational),
    PlainSerializer(format_rational, return_type=str),
]
