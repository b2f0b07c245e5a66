"""
Benchmark runs: both flows per manifest instance, one process per instance
when running in parallel.
"""
import asyncio
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.core.config import Settings
from app.core.errors import CsfError, FormatError, ResourceError
from app.core.logging import logger
from app.core.metrics import metrics, time_operation
from app.netlist import counter_family, latch_split, parse_split_spec, read_blif_lite, write_blif_lite
from app.schemas import BenchRow, ManifestEntry, bench_csv
from app.solver import Csf, build_problem, solve_monolithic, solve_partitioned


def _timed_flow(network, x_latches, flow: str, limits: Dict[str, Any]) -> Optional[Csf]:
    """The flow's Csf, or None when it ran out of nodes, subsets or time"""
    try:
        problem, _ = build_problem(network, x_latches, limits["node_limit"], limits["timeout_s"])
        if flow == "partitioned":
            return solve_partitioned(problem, limits["subset_limit"], trim=limits["trim"])
        return solve_monolithic(problem, limits["subset_limit"])
    except ResourceError as e:
        logger.warning(f"[BENCH] {flow} '{network.name}' did not complete: {e}")
        return None


def run_bench_instance(entry: Dict[str, str], base_dir: str, limits: Dict[str, Any]) -> Dict[str, Any]:
    """Solve one instance with both flows; module level so worker processes can import it"""
    name = entry["name"]
    try:
        network = read_blif_lite(Path(base_dir) / entry["path"])
        x_latches = parse_split_spec(network, entry["split"])
        split = latch_split(network, x_latches)
        part = _timed_flow(network, x_latches, "partitioned", limits)
        mono = _timed_flow(network, x_latches, "monolithic", limits)
    except CsfError as e:
        logger.error(f"[BENCH] instance '{name}' failed: {e}")
        return BenchRow(name=name, error=str(e)).model_dump()

    completed = part or mono
    row = BenchRow(
        name=name,
        i=len(network.inputs),
        o=len(network.outputs),
        cs=len(network.latches),
        f_cs=len(split.fixed.latches),
        x_cs=len(split.unknown.latches),
        csf_states=None if completed is None else completed.stats.states,
        part_s=None if part is None else part.stats.elapsed_s,
        mono_s=None if mono is None else mono.stats.elapsed_s,
    )
    return row.model_dump()


def generate_family(directory: str, count: int, start: int = 8, step: int = 2) -> Path:
    """Write `count` counters of growing size and their manifest; returns the manifest path"""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    entries = []
    for k in range(count):
        network = counter_family(start + k * step)
        path = f"{network.name}.blif"
        (target / path).write_text(write_blif_lite(network), encoding="utf-8")
        entries.append(ManifestEntry(name=network.name, path=path, split=f"k:{len(network.latches) // 2}"))
    manifest = target / "manifest.txt"
    manifest.write_text("".join(entry.to_line() + "\n" for entry in entries), encoding="utf-8")
    logger.info(f"[BENCH] generated {count} circuits under {target}")
    return manifest


class BenchService:
    """Runs manifest instances and writes the comparison CSV"""

    def __init__(self, settings: Settings):
        self.settings = settings

    def load_manifest(self, path: str) -> List[ManifestEntry]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise FormatError(f"cannot read manifest '{path}': {e.strerror}") from e
        return ManifestEntry.parse_manifest(text)

    def _limits(self, timeout_s: Optional[float]) -> Dict[str, Any]:
        return {
            "node_limit": self.settings.node_limit,
            "subset_limit": self.settings.subset_limit,
            "timeout_s": timeout_s or self.settings.timeout_s,
            "trim": self.settings.trim_violations,
        }

    @time_operation("bench_service.run")
    async def run(self, manifest: str, csv_path: Optional[str] = None, timeout_s: Optional[float] = None,
                  jobs: Optional[int] = None) -> List[BenchRow]:
        entries = self.load_manifest(manifest)
        base_dir = str(Path(manifest).parent)
        limits = self._limits(timeout_s)
        jobs = jobs or self.settings.bench_jobs
        logger.info(f"[BENCH] {len(entries)} instances, jobs={jobs}")

        loop = asyncio.get_running_loop()
        payloads = [entry.model_dump() for entry in entries]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = await asyncio.gather(*[
                    loop.run_in_executor(pool, run_bench_instance, payload, base_dir, limits)
                    for payload in payloads
                ])
        else:
            results = []
            for payload in payloads:
                results.append(await asyncio.to_thread(run_bench_instance, payload, base_dir, limits))

        rows = [BenchRow(**result) for result in results]
        for row in rows:
            status = "error" if row.error else ("cnc" if row.part_s is None or row.mono_s is None else "ok")
            metrics.increment_counter("bench_service.instances", 1, {"status": status})
        if csv_path:
            Path(csv_path).write_text(bench_csv(rows), encoding="utf-8")
            logger.info(f"[BENCH] wrote {len(rows)} rows to {csv_path}")
        return rows
