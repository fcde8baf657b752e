from polymellin.models.polynomial import (
    PolynomialFile,
    TermEntry,
    dump_polynomial,
    load_polynomial,
    parse_polynomial,
)
from polymellin.models.reports import ErrorInfo, Provenance, ReportDocument, sha256_file

__all__ = [
    "ErrorInfo",
    "PolynomialFile",
    "Provenance",
    "ReportDocument",
    "TermEntry",
    "dump_polynomial",
    "load_polynomial",
    "parse_polynomial",
    "sha256_file",
]
