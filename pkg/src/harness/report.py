"""
Dimension Report Orchestrator

Fans the independent (r, d, sample) cells of the dimension grid out to worker
threads with asyncio and merges the rows back in grid order.
"""
# Importing dependencies.
import asyncio
import logging
import time
from typing import List, Literal, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..config import Config
from ..errors import UsageError
from ..geometry.local_model import divisor_map
from ..geometry.sampling import random_q_member
from ..geometry.tangent import (
    build_tangent_system,
    expected_hom_dimension,
    expected_symplectic_dimension,
    hom_space_dimension,
)

logger = logging.getLogger(__name__)

DivisorType = Literal["reduced", "non-reduced"]


class ReportRow(BaseModel):
    r: int
    d: int
    sample: int
    sample_seed: int
    divisor_type: DivisorType
    hom_dim: int
    hom_expected: int
    tangent_dim: int
    tangent_expected: Optional[int]
    fiber_dim: int
    match: bool


class DimensionReport(BaseModel):
    r_max: int
    d_max: int
    samples: int
    seed: int
    grid: List[ReportRow]

    def all_match(self) -> bool:
        """True iff every row with an asserted expectation matched."""
        return all(row.match for row in self.grid)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in self.grid])

    def render_text(self) -> str:
        frame = self.to_frame()
        if frame.empty:
            return "(empty report)"
        frame["tangent_expected"] = frame["tangent_expected"].map(
            lambda v: "-" if pd.isna(v) else str(int(v))
        )
        columns = [
            "r", "d", "sample_seed", "divisor_type", "hom_dim", "hom_expected",
            "tangent_dim", "tangent_expected", "fiber_dim", "match",
        ]
        body = frame[columns].to_string(index=False)
        matched = int(frame["match"].sum())
        return f"{body}\n\n{matched}/{len(frame)} rows match"


def cell_seed(seed: int, r: int, d: int, sample: int) -> int:
    """Independent, reproducible seed for one grid cell."""
    return int(np.random.SeedSequence([seed, r, d, sample]).generate_state(1)[0])


def compute_row(r: int, d: int, sample: int, seed: int) -> ReportRow:
    """
    Samples one member of Q and measures its dimensions.

    Even samples are drawn on the reduced locus; odd samples may carry any divisor.

    Args:
        r: half rank
        d: divisor degree
        sample: index of the sample within the cell
        seed: master seed

    Returns:
        ReportRow: observed and expected dimensions
    """
    sample_seed = cell_seed(seed, r, d, sample)
    q = random_q_member(r, d, sample_seed, reduced=True if sample % 2 == 0 else None)
    reduced = divisor_map(q).is_reduced()

    hom_dim = hom_space_dimension(q)
    system = build_tangent_system(q)
    tangent_dim = system.kernel_dimension()
    fiber_dim = system.fixed_divisor_kernel_dimension()

    hom_expected = expected_hom_dimension(r, d)
    tangent_expected = expected_symplectic_dimension(r, d) if reduced else None
    match = hom_dim == hom_expected and (tangent_expected is None or tangent_dim == tangent_expected)
    if not match:
        logger.error(
            "--- REPORT: mismatch at r=%d d=%d seed=%d (hom %d/%d, tangent %d/%s) ---",
            r, d, sample_seed, hom_dim, hom_expected, tangent_dim, tangent_expected,
        )
    return ReportRow(
        r=r, d=d, sample=sample, sample_seed=sample_seed,
        divisor_type="reduced" if reduced else "non-reduced",
        hom_dim=hom_dim, hom_expected=hom_expected,
        tangent_dim=tangent_dim, tangent_expected=tangent_expected,
        fiber_dim=fiber_dim, match=match,
    )


async def _run_grid(r_max: int, d_max: int, samples: int, seed: int) -> List[ReportRow]:
    semaphore = asyncio.Semaphore(Config.WORKERS)

    async def run_cell(r: int, d: int, sample: int) -> ReportRow:
        async with semaphore:
            return await asyncio.to_thread(compute_row, r, d, sample, seed)

    # Create async tasks in grid order; gather preserves that order.
    tasks = [
        asyncio.create_task(run_cell(r, d, s))
        for r in range(1, r_max + 1)
        for d in range(1, d_max + 1)
        for s in range(samples)
    ]
    return list(await asyncio.gather(*tasks))


def dimension_report(r_max: int, d_max: int, samples: int, seed: int) -> DimensionReport:
    """
    Measures hom and tangent dimensions over the grid 1..r_max × 1..d_max.

    Raises:
        UsageError: a bound is below 1
    """
    if min(r_max, d_max, samples) < 1:
        raise UsageError(f"r_max, d_max and samples must be at least 1, got {r_max}, {d_max}, {samples}")

    logger.info(">>> DIMENSION REPORT: r<=%d d<=%d, %d samples per cell <<<", r_max, d_max, samples)
    start_time = time.time()
    rows = asyncio.run(_run_grid(r_max, d_max, samples, seed))
    logger.info(">>> DIMENSION REPORT COMPLETE. %d rows in %.2fs <<<", len(rows), time.time() - start_time)

    return DimensionReport(r_max=r_max, d_max=d_max, samples=samples, seed=seed, grid=rows)
