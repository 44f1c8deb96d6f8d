"""Loading the shipped corpus and building small machines for tests."""

from __future__ import annotations

from pathlib import Path

from cassiopea.parser import SourceFile, parse_alewife, parse_machine, parse_mapping

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# machine name -> (mapping file, Alewife examples it is meant to lower)
COMPATIBLE = {
    "toy2": ("toy2", ("swap", "clear", "inc")),
    "mini8": ("mini8", ("clear8", "zero_pair", "load")),
}


def corpus_path(*parts: str) -> str:
    return str(CORPUS.joinpath(*parts))


def load_machine(name: str):
    return parse_machine(SourceFile.from_path(corpus_path("machines", f"{name}.casp")))


def load_mapping(name: str):
    return parse_mapping(SourceFile.from_path(corpus_path("mappings", f"{name}.map")))


def load_alewife(name: str):
    return parse_alewife(SourceFile.from_path(corpus_path("alewife", f"{name}.ale")))
