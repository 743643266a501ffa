"""
Effectiveness sweep: every sampled non-central symplectic matrix must move some
Lagrangian, and ±identity must move none.
"""
# Importing dependencies.
import asyncio
import logging
import time
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from ..algebra.linalg import ScalarMatrix
from ..config import Config
from ..errors import UsageError
from ..geometry.symplectic import (
    SymplecticMatrix,
    act_on_lagrangian,
    effectiveness_witness,
    is_central,
    random_lagrangian,
    random_symplectic,
    standard_form,
)

logger = logging.getLogger(__name__)


class WitnessRow(BaseModel):
    label: str
    central: bool
    matrix: List[List[str]]
    witness: Optional[List[List[str]]]
    ok: bool


class EffectivenessReport(BaseModel):
    r: int
    trials: int
    seed: int
    rows: List[WitnessRow]

    def all_ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def render_text(self) -> str:
        lines = [f"r={self.r} trials={self.trials} seed={self.seed}"]
        for row in self.rows:
            verdict = "ok" if row.ok else "FAILED"
            found = "witness" if row.witness is not None else "no witness"
            lines.append(f"  {row.label:<12} central={row.central!s:<5} {found:<10} {verdict}")
        lines.append(f"{sum(r.ok for r in self.rows)}/{len(self.rows)} ok")
        return "\n".join(lines)


def central_moves_nothing(m: SymplecticMatrix, trials: int, seed: int) -> bool:
    """Samples `trials` Lagrangians and checks that m fixes each of them."""
    rng = np.random.default_rng(seed)
    return all(
        act_on_lagrangian(m, v) == v
        for v in (random_lagrangian(m.space, rng) for _ in range(trials))
    )


def check_element(label: str, m: SymplecticMatrix, trials: int, seed: int) -> WitnessRow:
    central = is_central(m)
    witness = effectiveness_witness(m, trials, seed)
    if central:
        ok = witness is None and central_moves_nothing(m, trials, seed)
    else:
        ok = witness is not None
    return WitnessRow(
        label=label,
        central=central,
        matrix=m.m.to_str_rows(),
        witness=witness.basis.to_str_rows() if witness is not None else None,
        ok=ok,
    )


def sample_non_central(r: int, count: int, seed: int) -> List[SymplecticMatrix]:
    """`count` random non-central symplectic matrices, deterministic in the seed."""
    space = standard_form(r)
    rng = np.random.default_rng(seed)
    found: List[SymplecticMatrix] = []
    while len(found) < count:
        m = random_symplectic(space, rng)
        if not is_central(m):
            found.append(m)
    return found


async def _run_checks(elements: List[tuple], trials: int, seed: int) -> List[WitnessRow]:
    semaphore = asyncio.Semaphore(Config.WORKERS)

    async def run_one(index: int, label: str, m: SymplecticMatrix) -> WitnessRow:
        async with semaphore:
            element_seed = int(np.random.SeedSequence([seed, index]).generate_state(1)[0])
            return await asyncio.to_thread(check_element, label, m, trials, element_seed)

    tasks = [asyncio.create_task(run_one(i, label, m)) for i, (label, m) in enumerate(elements)]
    return list(await asyncio.gather(*tasks))


def effectiveness_sweep(
        r: int,
        samples: int,
        trials: int,
        seed: int,
        explicit: Optional[ScalarMatrix] = None,
) -> EffectivenessReport:
    """
    Witness search over random non-central matrices (or one explicit matrix) plus ±identity.

    Raises:
        UsageError: r, samples or trials below 1
    """
    if min(r, samples, trials) < 1:
        raise UsageError(f"r, samples and trials must be at least 1, got {r}, {samples}, {trials}")
    space = standard_form(r)
    one = ScalarMatrix.identity(space.dimension)
    if explicit is not None:
        elements = [("input", SymplecticMatrix(space, explicit))]
    else:
        elements = [(f"sample-{i}", m) for i, m in enumerate(sample_non_central(r, samples, seed))]
    elements += [("+identity", SymplecticMatrix(space, one)), ("-identity", SymplecticMatrix(space, -one))]

    logger.info(">>> EFFECTIVENESS SWEEP: r=%d, %d elements, %d trials <<<", r, len(elements), trials)
    start_time = time.time()
    rows = asyncio.run(_run_checks(elements, trials, seed))
    logger.info(">>> EFFECTIVENESS SWEEP COMPLETE in %.2fs <<<", time.time() - start_time)
    return EffectivenessReport(r=r, trials=trials, seed=seed, rows=rows)
