#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################

import logging
import sys
from logging import Handler, LogRecord
from typing import Any, Dict

# CLASSES #############################################################################################################


class Singleton(type):
	"""A singleton, meant to be extended.

	Attributes
	----------
	_instances : Dict[Any, Singleton]
		Holds subclasses as keys and instances of said subclasses as values.

	Methods
	-------
	__call__(cls, *args, **kwargs)
		Creates the instance if it does not yet exists and returns it.
	"""

	_instances = {}

	def __call__(cls: Any, *args: Any, **kwargs: Dict[str, Any]) -> Any:
		if cls not in cls._instances:
			cls._instances[cls] = super(Singleton, cls).__call__(*args, **kwargs)

		return cls._instances[cls]


class ColoredHandler(Handler, metaclass=Singleton):
	"""Prints colored log records on stderr, keeping stdout for the computed artifacts.

	Attributes
	----------
	_colors : Dict[int, str]
		Holds logging levels as keys and ANSI colors as values.
	_reset : str
		Reset color formatting (default is '\033[0m').
	_verbose : bool
		Verbose mode: debug and info records are only printed when set (default is False).
	_formatters : Dict[int, logging.Formatter]
		Holds logging levels as keys and `Formatter` as values (default is dict()).

	Methods
	-------
	verbose(value)
		Toggles the verbosity.
	emit(record)
		Formats and prints a `LogRecord`, depending on the verbosity.
	"""

	_colors = {
		logging.CRITICAL: '\033[91m',
		logging.ERROR: '\033[91m',
		logging.WARNING: '\033[93m',
		logging.INFO: '\033[94m',
		logging.DEBUG: '\033[92m',
	}
	_reset = '\033[0m'
	_verbose = False
	_formatters = {}

	def __init__(self: Singleton, verbose: bool = False) -> None:
		Handler.__init__(self)
		__class__._verbose = verbose
		__class__._formatters = {key: logging.Formatter(
			fmt=value + '[%(asctime)s][%(levelname)s]: %(message)s' + __class__._reset,
			datefmt='%H:%M:%S',
		) for key, value in __class__._colors.items()}

	@staticmethod
	def verbose(value: bool) -> None:
		__class__._verbose = value

	def emit(self: Singleton, record: LogRecord) -> None:
		if __class__._verbose or logging.WARNING <= record.levelno:
			formatter = __class__._formatters.get(record.levelno, __class__._formatters[logging.ERROR])
			print(formatter.format(record), file=sys.stderr)


# FUNCTIONS ###########################################################################################################


def setup(verbose: bool = False) -> ColoredHandler:
	"""Attaches the colored handler to the root logger once, and sets its verbosity.

	Parameters
	----------
	verbose : bool
		Toggle the verbosity (default: False).

	Returns
	-------
	ColoredHandler
		The single handler instance.
	"""

	handler = ColoredHandler(verbose=verbose)
	ColoredHandler.verbose(verbose)

	root = logging.getLogger()
	root.setLevel(logging.DEBUG)
	if handler not in root.handlers:
		root.addHandler(handler)

	return handler
