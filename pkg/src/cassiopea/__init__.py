"""Cassiopea machine descriptions and Alewife specs: parse, typecheck, run, verify, lower."""

from .parser import (parse_alewife, parse_machine, parse_mapping, parse_program,
                     parse_spec)
from .verify import VerifyConfig, Verdict, verify
from .lower import lower_spec

__version__ = "0.1.0"

__all__ = ["parse_machine", "parse_spec", "parse_program", "parse_mapping",
           "parse_alewife", "verify", "VerifyConfig", "Verdict", "lower_spec"]
