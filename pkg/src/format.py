#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


import csv
from enum import Enum, unique
from functools import partial
from io import StringIO
from json import dumps
from typing import Any, List, Optional
from xml.etree.ElementTree import Element, SubElement, tostring  # noqa:S405

from datatypes import Report, ReportEncoder, Table

from defusedxml.minidom import parseString

import numpy as np

from timed import timed_callable


# CONSTANTS ###########################################################################################################


"""Significant digits of floats in every format, unless `--digits` says otherwise."""
DEFAULT_DIGITS = 6

"""Enough significant digits for floats to read back exactly."""
EXACT_DIGITS = 17


# FUNCTIONS ###########################################################################################################


def _cell(value: Any, digits: int) -> str:
	"""Prints one table value, floats with the given significant digits and `None` as an empty cell."""

	if value is None:
		return ""
	if isinstance(value, Enum):
		return str(value.value)
	if isinstance(value, (bool, np.bool_)):
		return str(bool(value)).lower()
	if isinstance(value, (int, np.integer)):
		return str(int(value))
	if isinstance(value, (float, np.floating)):
		return format(float(value), "." + str(digits) + "g")

	return str(value)


def _rounded(data: Any, digits: int) -> Any:
	if isinstance(data, dict):
		return {key: _rounded(value, digits) for key, value in data.items()}
	if isinstance(data, (list, tuple)):
		return [_rounded(value, digits) for value in data]
	if isinstance(data, (float, np.floating)) and not isinstance(data, bool):
		return float(format(float(data), "." + str(digits) + "g"))

	return data


@timed_callable("Formatting the report to CSV...")
def _csv_format(report: Report, digits: Optional[int] = None) -> str:
	"""Formats a report into CSV, one `# title` comment line and one header line per table.

	Parameters
	----------
	report : Report
		A report exposing its tables.
	digits : Optional[int]
		The significant digits of floats (default is `DEFAULT_DIGITS`, `EXACT_DIGITS` reads back exactly).

	Returns
	-------
	str
		A `str` holding the CSV tables, separated by blank lines.
	"""

	digits = DEFAULT_DIGITS if digits is None else digits
	stream = StringIO()
	writer = csv.writer(stream, lineterminator="\n")

	for index, table in enumerate(report.tables()):
		if index:
			stream.write("\n")
		stream.write("# " + table.title + "\n")
		writer.writerow(table.columns)
		writer.writerows([_cell(value, digits) for value in row] for row in table.rows)

	return stream.getvalue()


@timed_callable("Formatting the report to JSON...")
def _json_format(report: Report, digits: Optional[int] = None) -> str:
	"""Formats a report into JSON.

	Parameters
	----------
	report : Report
		A report exposing `to_dict`.
	digits : Optional[int]
		The significant digits of floats (default is `DEFAULT_DIGITS`, `EXACT_DIGITS` reads back exactly).

	Returns
	-------
	str
		A `str` representing a JSON report.
	"""

	data = _rounded(report.to_dict(), DEFAULT_DIGITS if digits is None else digits)
	return dumps(data, skipkeys=True, sort_keys=True, indent=4, cls=ReportEncoder) + "\n"


def _aligned(table: Table, digits: int) -> List[str]:
	cells = [list(table.columns)] + [[_cell(value, digits) for value in row] for row in table.rows]
	widths = [max(len(row[index]) for row in cells) for index in range(len(table.columns))]

	return [table.title] + ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]


@timed_callable("Formatting the report to aligned text...")
def _text_format(report: Report, digits: Optional[int] = None) -> str:
	"""Formats a report into right-aligned text columns, floats with `DEFAULT_DIGITS` significant digits by default."""

	digits = DEFAULT_DIGITS if digits is None else digits
	return "\n\n".join("\n".join(_aligned(table, digits)) for table in report.tables()) + "\n"


@timed_callable("Formatting the report to XML...")
def _xml_format(report: Report, digits: Optional[int] = None) -> str:
	"""Formats a report into a custom XML schema.

	Parameters
	----------
	report : Report
		A report exposing its tables.
	digits : Optional[int]
		The significant digits of floats (default is `DEFAULT_DIGITS`, `EXACT_DIGITS` reads back exactly).

	Returns
	-------
	str
		A `str` representing a XML report.
	"""

	digits = DEFAULT_DIGITS if digits is None else digits
	tables = Element("Tables")
	for table in report.tables():
		node = SubElement(tables, "Table", {"Title": table.title})
		for row in table.rows:
			SubElement(node, "Row").extend([
				Element("Cell", {"Column": str(column), "Value": _cell(value, digits)})
				for column, value in zip(table.columns, row)
			])

	return parseString(tostring(tables)).toprettyxml()


# CLASSES #############################################################################################################


@unique
class OutputFormat(Enum):
	"""An enumeration whose purpose is to map format keywords to formatting functions.

	Attributes
	----------
	csv : partial
		Callable object mapped to a CSV formatter, the one `compare --numeric` reads back.
	json : partial
		Callable object mapped to a JSON formatter.
	text : partial
		Callable object mapped to an aligned text formatter.
	xml : partial
		Callable object mapped to a XML formatter (custom format).

	Methods
	-------
	__call__
		Converts the enumeration member into the corresponding function call.
	"""

	csv: partial = partial(_csv_format)
	json: partial = partial(_json_format)
	text: partial = partial(_text_format)
	xml: partial = partial(_xml_format)

	def __call__(self: Any, report: Report, digits: Optional[int] = None) -> str:
		"""Converts the enumeration member into the corresponding function call.

		Parameters
		----------
		report : Report
			A report.
		digits : Optional[int]
			The significant digits of floats (default is `DEFAULT_DIGITS`).

		Returns
		-------
		str
			A `str` representing the report.
		"""

		return self.value(report, digits)
