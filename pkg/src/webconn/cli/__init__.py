"""Command line front end."""
from .parser import WebSpecFile, parse_expression, parse_form1, parse_form2, parse_ratfunc, parse_spec
from .report import COMMANDS, Report, run, serialize_report

__all__ = ["WebSpecFile", "parse_expression", "parse_form1", "parse_form2", "parse_ratfunc",
           "parse_spec", "COMMANDS", "Report", "run", "serialize_report"]
