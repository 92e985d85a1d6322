"""Named pass/fail results with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}

    @classmethod
    def from_json(cls, data: dict) -> "CheckResult":
        return cls(str(data["name"]), bool(data["passed"]), str(data.get("detail", "")))


@dataclass
class CheckReport:
    """Ordered collection of check results; names are unique."""

    results: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        if any(r.name == name for r in self.results):
            raise ValueError(f"duplicate check {name!r}")
        self.results.append(CheckResult(name, bool(passed), detail))

    def extend(self, other: "CheckReport") -> None:
        for r in other.results:
            self.add(r.name, r.passed, r.detail)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.results)

    def names(self) -> list[str]:
        return [r.name for r in self.results]

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]

    @classmethod
    def from_json(cls, data: list) -> "CheckReport":
        rep = cls()
        for item in data:
            r = CheckResult.from_json(item)
            rep.add(r.name, r.passed, r.detail)
        return rep

    def lines(self) -> list[str]:
        return [f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "")
                for r in self.results]
