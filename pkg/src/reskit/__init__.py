"""Exact resultants of homogeneous polynomial systems from their traces."""
from .algebra import (HomogeneityError, ParamPoly, ParseError, PolySystem, Polynomial,
                      PowerTable, coefficient, format_coefficient, mpq, multiply,
                      parse_coefficient, parse_polynomial, power, restrict_zero)
from .oracles import (OracleInconclusive, determinant_resultant, macaulay_resultant,
                      numeric_root_product, sylvester_resultant)
from .schur import degree_vector, resultant, schur_direct, schur_recurrence
from .traces import build_trace_table, trace, trace_positive

__version__ = "0.1.0"
