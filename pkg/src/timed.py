#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# IMPORTS #############################################################################################################

import logging
from functools import wraps
from time import perf_counter
from typing import Any, Callable, Dict, Optional


# FUNCTIONS ###########################################################################################################


def timed_callable(message: str) -> Callable[[Callable], Callable]:
	"""Logs the time taken by a `Callable` to run (in seconds), and returns its eventual return values.

	Parameters
	----------
	message : str
		The message to log before running the `Callable`. Cannot be empty.

	Returns
	-------
	Callable[[Callable], Callable]
		A decorator wrapping the `Callable` with the timing logs.
	"""

	if not message:
		raise ValueError("A timed callable needs a message.")

	def callable_decorator(callable: Callable) -> Callable:
		@wraps(callable)
		def timed_wrapper(*args: Any, **kwds: Dict[str, Any]) -> Optional[Any]:
			logging.info(message)

			start = perf_counter()
			result = callable(*args, **kwds)
			end = perf_counter()

			logging.info("Done in " + format(end - start, ".3f") + "s.")

			return result
		return timed_wrapper

	return callable_decorator
