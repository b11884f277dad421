"""Job definitions parsed from golod-forge job files."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from src.services.settings import DEFAULT_CHARACTERISTIC

Command = Literal["resolve", "koszul", "trim", "product-resolution", "golod", "corpus"]
COMMANDS = ("resolve", "koszul", "trim", "product-resolution", "golod", "corpus")

# option name -> kind of value accepted after "="
OPTION_KINDS: Dict[str, str] = {
    "N": "int",
    "bound": "int",
    "sigma": "ints",
    "witness": "ints",
    "a": "names",
    "factors": "names",
    "minimal": "bool",
    "format": "word",
}


class RingDeclaration(BaseModel):
    variables: List[str] = Field(..., min_length=1)
    characteristic: int = DEFAULT_CHARACTERISTIC
    order: Literal["grevlex", "lex"] = "grevlex"


class IdealDeclaration(BaseModel):
    name: str
    generators: List[str] = Field(default_factory=list, description="Canonical printing of each generator.")


class RunStatement(BaseModel):
    command: Command
    arguments: List[str] = Field(default_factory=list, description="Ideal names or corpus entry ids.")
    options: Dict[str, str] = Field(default_factory=dict)

    def int_option(self, key: str) -> Optional[int]:
        raw = self.options.get(key)
        return int(raw) if raw is not None else None

    def int_list_option(self, key: str) -> Optional[List[int]]:
        raw = self.options.get(key)
        return [int(item) for item in raw.split(",")] if raw is not None else None

    def name_list_option(self, key: str) -> Optional[List[str]]:
        raw = self.options.get(key)
        return raw.split(",") if raw is not None else None


class JobSpec(BaseModel):
    ring: Optional[RingDeclaration] = None
    ideals: List[IdealDeclaration] = Field(default_factory=list)
    runs: List[RunStatement] = Field(default_factory=list)

    def ideal_names(self) -> List[str]:
        return [ideal.name for ideal in self.ideals]

    def declaration(self, name: str) -> Optional[IdealDeclaration]:
        for ideal in self.ideals:
            if ideal.name == name:
                return ideal
        return None
