#!/usr/bin/env python3
"""
YAML Configuration-Based Experiment Runner

Thin wrapper around the ``liewave`` command for running from a source checkout.

Usage:
    # Run a specific configuration
    python scripts/run_experiment.py configs/linear_decay_circle.yaml

    # List available configurations
    python scripts/run_experiment.py --list-configs

Available configurations:
    - configs/plancherel_check.yaml       # Transform round trip and Plancherel identity on SU(2)
    - configs/plancherel_torus.yaml       # Same check on an anisotropic 2-torus
    - configs/linear_decay_circle.yaml    # Decay bounds for the resonant mode on the unit circle
    - configs/linear_decay_su2.yaml       # Decay bounds for random data on SU(2)
    - configs/l1_experiment.yaml          # Zero-mode obstruction with L1 data
    - configs/semilinear_circle.yaml      # Picard iteration for |u|^2 on the unit circle
    - configs/semilinear_large_T.yaml     # Large horizon: non-contraction or blow-up abort
    - configs/gn_check.yaml               # Gagliardo-Nirenberg ratios on SU(2)
    - configs/multiplier_check.yaml       # Region-wise multiplier constants on an anisotropic 2-torus
"""

import sys
from pathlib import Path

# Add the src directory to the path so we can import our package
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from liewave.cli import main


if __name__ == "__main__":
    argv = sys.argv[1:]
    if argv == ["--list-configs"]:
        argv = ["list-configs"]
    elif argv and not argv[0].startswith("-") and argv[0] not in ("run", "validate", "presets", "list-configs"):
        argv = ["run"] + argv
    sys.exit(main(argv))
