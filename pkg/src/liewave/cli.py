"""Command-line front end.

Usage:
    liewave run configs/linear_decay_circle.yaml
    liewave validate configs/semilinear_circle.yaml
    liewave presets
    liewave list-configs

Exit codes: 0 all verdicts PASS, 1 some verdict FAIL, 2 configuration error,
3 numerical abort (blow-up or non-finite values).
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import yaml

from . import __version__
from .config.run_config import load_run_config
from .config.settings import get_paths, get_settings
from .data.presets import describe_presets
from .exceptions import ConfigurationError, LiewaveError, NumericalAbort
from .pipelines.experiments import ExperimentPipeline

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_ABORT = 3


def list_available_configs(configs_dir: Path) -> int:
    """List all available configuration files."""
    if not configs_dir.exists():
        print(f"❌ No configs directory found at {configs_dir}")
        return EXIT_FAIL

    config_files = sorted(configs_dir.glob("*.yaml"))
    if not config_files:
        print(f"❌ No YAML configuration files found in {configs_dir}/")
        return EXIT_FAIL

    print("📋 Available Configuration Files:")
    print("=" * 50)
    for config_file in config_files:
        print(f"\n🔧 {config_file.name}")
        try:
            with open(config_file) as f:
                first_line = f.readline().strip()
                config_data = yaml.safe_load(f) or {}
            if first_line.startswith('#'):
                print(f"   📝 {first_line[1:].strip()}")
            group = config_data.get('group', {})
            print(f"   🧪 Experiment: {config_data.get('experiment', '?')}")
            print(f"   🌀 Group: {group.get('kind', '?')} B={group.get('bandlimit', '?')}")
        except Exception as e:
            print(f"   ❌ Error reading config: {e}")

    print("\n💡 Usage: liewave run configs/[filename]")
    return EXIT_OK


def _print_result(result) -> None:
    print("\n📊 Verdicts:")
    for name, ok in result.verdicts.items():
        print(f"  {'✅' if ok else '❌'} {name}")
    diagnostic = result.summary.get("diagnostic")
    if diagnostic:
        print(f"\n🔍 {diagnostic}")


def cmd_run(args) -> int:
    config_path = Path(args.config)
    print(f"📁 Loading configuration: {config_path}")
    try:
        pipeline = ExperimentPipeline.from_file(config_path, enable_logging=not args.quiet)
        if args.output_dir:
            pipeline.run_config.output.directory = Path(args.output_dir)
        result = pipeline.run()
    except ConfigurationError as e:
        print(f"\n❌ Configuration error: {e}")
        return EXIT_CONFIG
    except NumericalAbort as e:
        logging.getLogger(__name__).error(f"Numerical abort: {e}")
        print(f"\n💥 Numerical abort: {e}")
        return EXIT_ABORT
    except LiewaveError as e:
        print(f"\n❌ Error: {e}")
        return EXIT_FAIL

    _print_result(result)
    print(f"\n💾 Output saved to: {pipeline.run_config.output.directory}")
    if result.passed:
        print("\n✅ All verdicts PASS")
        return EXIT_OK
    print("\n❌ At least one verdict FAILED")
    return EXIT_FAIL


def cmd_validate(args) -> int:
    config_path = Path(args.config)
    try:
        run_config = load_run_config(config_path)
        pipeline = ExperimentPipeline(run_config, config_dir=config_path.parent, enable_logging=False)
        is_valid, issues = pipeline.validate()
    except ConfigurationError as e:
        print(f"❌ {e}")
        return EXIT_CONFIG
    if not is_valid:
        print("❌ Validation issues found:")
        for issue in issues:
            print(f"  - {issue}")
        return EXIT_CONFIG
    print(f"✅ {config_path} is valid")
    print(f"   🧪 Experiment: {run_config.experiment.value}")
    print(f"   🌀 Group: {run_config.spec.describe()}")
    return EXIT_OK


def cmd_presets(args) -> int:
    print("📋 Initial-data presets:")
    print(describe_presets())
    return EXIT_OK


def cmd_list_configs(args) -> int:
    configs_dir = Path(args.dir) if args.dir else get_paths().configs_dir
    return list_available_configs(configs_dir)


def build_parser() -> argparse.ArgumentParser:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog="liewave",
        description="Spectral experiments for the viscoelastic damped wave equation on compact Lie groups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  liewave run configs/linear_decay_circle.yaml     # Run an experiment
  liewave validate configs/semilinear_circle.yaml  # Check a config without running it
  liewave presets                                  # Show initial-data presets
  liewave list-configs                             # Show available configs
        """
    )
    parser.add_argument("--version", action="version", version=f"liewave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run the experiment described by a YAML config")
    run.add_argument("config", help="Path to YAML configuration file")
    run.add_argument("--output-dir", default=None, help="Override the output directory of the config")
    run.add_argument("--quiet", action="store_true", help="Do not configure log handlers")
    run.set_defaults(func=cmd_run)

    validate = sub.add_parser("validate", help="Parse and check a YAML config")
    validate.add_argument("config", help="Path to YAML configuration file")
    validate.set_defaults(func=cmd_validate)

    presets = sub.add_parser("presets", help="List initial-data presets")
    presets.set_defaults(func=cmd_presets)

    list_configs = sub.add_parser("list-configs", help="List configuration files")
    list_configs.add_argument("--dir", default=None, help="Directory to search (default: configs/)")
    list_configs.set_defaults(func=cmd_list_configs)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, matching the config-error code
        return int(e.code or 0)
    # each invocation reads the environment once; a bad LIEWAVE_THREADS is a configuration error
    get_settings.cache_clear()
    try:
        get_settings()
    except ValueError as e:
        print(f"❌ Invalid environment settings: {e}")
        return EXIT_CONFIG
    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("\n\n❌ Operation cancelled by user")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
