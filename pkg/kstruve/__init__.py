"""Evaluation and numerical verification of the k-Struve function family."""

from loguru import logger

logger.disable("kstruve")
