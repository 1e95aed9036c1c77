"""Bundled demo dataset: a synthetic 21-person perception tensor.

Three groups of seven report on each other's ties; within-group pairs are
reported often, cross-group pairs rarely, with a few directed bridges in
between. Regenerate with scripts/make_demo_data.py.
"""

from importlib import resources

from .model import CssTensor, ProbabilisticGraph, ingest_css, parse_css


def demo_css_text() -> str:
    return (
        resources.files("netreel").joinpath("data/demo_css.json").read_text(encoding="utf-8")
    )


def demo_css() -> CssTensor:
    return parse_css(demo_css_text())


def demo_graph() -> ProbabilisticGraph:
    return ingest_css(demo_css())
