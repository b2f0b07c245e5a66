"""
Benchmark manifest entries and result rows
"""
import csv
import io
from typing import List, Optional

from pydantic import BaseModel, Field

from app.core.errors import FormatError

CNC = "CNC"
MISSING = "-"
CSV_COLUMNS = ("name", "i", "o", "cs", "f_cs", "x_cs", "csf_states", "part_s", "mono_s", "ratio")
CSV_HEADER = ",".join(CSV_COLUMNS)


class ManifestEntry(BaseModel):
    """One benchmark instance: `<name> <blif path> <split spec>`"""
    name: str = Field(..., description="Instance name")
    path: str = Field(..., description="BLIF-lite file, relative to the manifest")
    split: str = Field(..., description="Latch names or k:N")

    @classmethod
    def parse_manifest(cls, text: str) -> List["ManifestEntry"]:
        entries = []
        names = set()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if len(tokens) != 3:
                raise FormatError("manifest lines need <name> <blif path> <split spec>", number)
            if tokens[0] in names:
                raise FormatError(f"duplicate instance '{tokens[0]}'", number)
            names.add(tokens[0])
            entries.append(cls(name=tokens[0], path=tokens[1], split=tokens[2]))
        return entries

    def to_line(self) -> str:
        return f"{self.name} {self.path} {self.split}"


class BenchRow(BaseModel):
    """Comparison of the partitioned and monolithic flows on one instance"""
    name: str
    i: int = Field(0, ge=0)
    o: int = Field(0, ge=0)
    cs: int = Field(0, ge=0)
    f_cs: int = Field(0, ge=0)
    x_cs: int = Field(0, ge=0)
    csf_states: Optional[int] = Field(None, ge=0)
    # None means the flow could not complete
    part_s: Optional[float] = Field(None, ge=0)
    mono_s: Optional[float] = Field(None, ge=0)
    error: Optional[str] = Field(None, description="Set when the instance could not be loaded")

    @property
    def ratio(self) -> str:
        if self.part_s is None or self.mono_s is None or self.part_s == 0:
            return MISSING
        return f"{self.mono_s / self.part_s:.1f}"

    @staticmethod
    def _seconds(value: Optional[float]) -> str:
        return CNC if value is None else f"{value:.3f}"

    def csv_fields(self) -> List[str]:
        if self.error is not None:
            return [self.name] + [MISSING] * (len(CSV_COLUMNS) - 1)
        return [
            self.name,
            str(self.i),
            str(self.o),
            str(self.cs),
            str(self.f_cs),
            str(self.x_cs),
            MISSING if self.csf_states is None else str(self.csf_states),
            self._seconds(self.part_s),
            self._seconds(self.mono_s),
            self.ratio,
        ]

    def to_csv_row(self) -> str:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="").writerow(self.csv_fields())
        return buffer.getvalue()


def bench_csv(rows: List[BenchRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(row.csv_fields() for row in rows)
    return buffer.getvalue()
