"""
Main Runner for the symplectic Quot toolkit

Without arguments it runs a small demonstration:
1. Sample a reduced member of Q and check its membership
2. Compare its tangent dimensions with the expected formulas
3. Run a small dimension report

With arguments it behaves exactly like the `sympquot` command.
"""

import sys

from src.cli import main as cli_main
from src.config import Config
from src.geometry.local_model import divisor_map, is_in_q
from src.geometry.sampling import random_q_member
from src.geometry.tangent import (
    expected_symplectic_dimension,
    hom_space_dimension,
    symplectic_tangent_dimension,
)
from src.harness.report import dimension_report
from src.logging_setup import setup_logging

DEMO_R, DEMO_D, DEMO_SEED = 2, 2, 7


def run_demo() -> int:
    setup_logging()

    print("\n============================================================")
    print("SYMPLECTIC QUOT TOOLKIT - DEMONSTRATION")
    print("============================================================\n")

    # ----------------------------------------
    # STEP 1: MEMBERSHIP
    # ----------------------------------------
    print("=== STEP 1: SAMPLE AND CHECK MEMBERSHIP ===")
    q = random_q_member(DEMO_R, DEMO_D, DEMO_SEED, reduced=True)
    print(f"r={q.r} d={q.d} K={q.order} in_q={is_in_q(q)}")
    print(f"divisor: {divisor_map(q).to_records()}")

    # ----------------------------------------
    # STEP 2: TANGENT DIMENSIONS
    # ----------------------------------------
    print("\n=== STEP 2: TANGENT DIMENSIONS ===")
    print(f"hom space: {hom_space_dimension(q)}")
    tangent = symplectic_tangent_dimension(q)
    expected = expected_symplectic_dimension(q.r, q.d)
    print(f"symplectic tangent: {tangent} (expected {expected})")

    # ----------------------------------------
    # STEP 3: DIMENSION REPORT
    # ----------------------------------------
    print("\n=== STEP 3: DIMENSION REPORT ===")
    report = dimension_report(2, 2, 2, DEMO_SEED)
    print(report.render_text())

    print(f"\nSettings: {Config.describe()}")
    return 0 if tangent == expected and report.all_match() else 4


if __name__ == "__main__":
    if len(sys.argv) > 1:
        sys.exit(cli_main(sys.argv[1:]))
    sys.exit(run_demo())
