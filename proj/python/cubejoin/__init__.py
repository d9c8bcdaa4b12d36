"""Columnar join engine with budgeted worst-case-optimal joins and
run-time learning of attribute orders."""

from cubejoin._core import (
    Catalog,
    IoError,
    QueryError,
    execute,
    genquery,
    oracle,
    parse_query,
)

__all__ = [
    "Catalog",
    "IoError",
    "QueryError",
    "execute",
    "genquery",
    "oracle",
    "parse_query",
]
