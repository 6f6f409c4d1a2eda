#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################


from json import loads

from datatypes import EigenEntry, EigenTable, Provenance, Table, TableSet

from defusedxml.ElementTree import fromstring

from format import EXACT_DIGITS, OutputFormat

import pytest


# FIXTURES ############################################################################################################


@pytest.fixture
def report() -> TableSet:
	return TableSet("report", [
		Table("first", ["name", "value", "flag"], [["a", 1.0 / 3.0, True], ["bb", 12, None]]),
		Table("second", ["x"], [[2.5]]),
	])


# TESTS ###############################################################################################################


def test_csv(report):
	lines = OutputFormat.csv(report).splitlines()

	assert lines == [
		"# first",
		"name,value,flag",
		"a,0.333333,true",
		"bb,12,",
		"",
		"# second",
		"x",
		"2.5",
	]


def test_csv_digits(report):
	assert "a,0.333,true" in OutputFormat.csv(report, 3).splitlines()
	assert "a,0.33333333333333331,true" in OutputFormat.csv(report, EXACT_DIGITS).splitlines()


def test_text(report):
	first, second = OutputFormat.text(report).rstrip("\n").split("\n\n")

	assert first.splitlines() == [
		"first",
		"name     value  flag",
		"   a  0.333333  true",
		"  bb        12",
	]
	assert second.splitlines() == ["second", "  x", "2.5"]


def test_json(report):
	data = loads(OutputFormat.json(report))

	assert data["title"] == "report"
	assert data["tables"][0]["rows"][0] == ["a", 0.333333, True]
	assert data["tables"][1] == {"title": "second", "columns": ["x"], "rows": [[2.5]]}
	assert loads(OutputFormat.json(report, 2))["tables"][0]["rows"][0][1] == 0.33
	assert loads(OutputFormat.json(report, EXACT_DIGITS))["tables"][0]["rows"][0][1] == 1.0 / 3.0


def test_json_eigen_table():
	table = EigenTable.empty(Provenance.afm_closed_form)
	table.add(EigenEntry("funnel", 0.5, "eps", 0, 0, 1.25, "afm-closed-form", 0.0))
	data = loads(OutputFormat.json(table))

	assert data["provenance"] == "afm-closed-form"
	assert data["entries"][0]["energy"] == 1.25
	assert data["entries"][0]["beta"] == 0.5


def test_xml(report):
	root = fromstring(OutputFormat.xml(report))
	tables = root.findall("Table")

	assert [table.get("Title") for table in tables] == ["first", "second"]
	cells = tables[0].find("Row").findall("Cell")
	assert [(cell.get("Column"), cell.get("Value")) for cell in cells] == [
		("name", "a"), ("value", "0.333333"), ("flag", "true"),
	]

	exact = fromstring(OutputFormat.xml(report, EXACT_DIGITS)).find("Table").find("Row").findall("Cell")[1]
	assert float(exact.get("Value")) == 1.0 / 3.0
