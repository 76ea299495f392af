#!/usr/bin/env python3
"""
PERSCRIBE
Command-line tool for permission rankings, personality profiles and
personalised app security descriptions
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from perscribe import (
    AdoptionVector, AppCategory, AttentionRanking, Gender, ModelBankSerializer,
    PersonalisedDescription, TraitProfile, Trait, TraitLevel,
    DatasetCodec, FeatureListParser, PersonalityParser, SnapshotParser,
    baseline_description, correlation_table, describe_trait, evaluate_targets,
    generate_description, label_traits, predict, profile_from_predictions,
    rank_permissions, score_bfi, synth_datasets,
)
from perscribe.config import Resources, load_json_document, load_run_config
from perscribe.constants import (
    DEFAULT_BASELINE_TRIALS, DEFAULT_TEST_FRACTION, MAX_SEED, SCHEMA_VERSION,
)
from perscribe.errors import PerscribeError, ValidationError
from perscribe.metrics import content_overlap, readability, text_stats
from perscribe.models import CATEGORY_ORDER, ModelFamily
from perscribe.pipeline import REPRESENTATIVE_PROFILES, content_stopwords, feature_overlap

logger = logging.getLogger("perscribe")

EXIT_OK = 0
EXIT_ERROR = 2


def parse_seed(value: str) -> int:
    """argparse type for 64-bit unsigned seeds"""
    try:
        seed = int(value, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {value!r}")
    if not 0 <= seed <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed out of range: {value} (must be 0-{MAX_SEED})")
    return seed


def entropy_seed() -> int:
    return int(np.random.SeedSequence().entropy) & MAX_SEED


def read_document(path: str, parse=None):
    """Load a JSON input file and parse it; parse errors are prefixed with the path"""
    data = load_json_document(path)
    if parse is None:
        return data
    try:
        return parse(data)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}")


def emit_json(data: dict):
    print(json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=2))


def write_json(path: str, data: dict):
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def _fmt(value: Optional[float], width: int = 8) -> str:
    return f"{'-':<{width}}" if value is None else f"{value:<{width}.3f}"


# =============================================================================
# rank
# =============================================================================

def print_ranking(ranking: AttentionRanking, category: AppCategory):
    print(f"\nPermission ranking for {category.value} apps (source: {ranking.source.value}):")
    print("-" * 80)
    print(f"{'Rank':<6} {'Permission':<14} {'Attention':<10}")
    print("-" * 80)
    for index, (kind, level) in enumerate(ranking.entries, start=1):
        print(f"{index:<6} {kind.value:<14} {level:<10.3f}")


def load_ranking(args, resources: Resources) -> AttentionRanking:
    category = AppCategory.from_name(args.category)
    if not args.snapshot:
        return resources.default_ranking
    snapshot = read_document(args.snapshot, SnapshotParser.parse)
    return rank_permissions(category, snapshot, resources.default_ranking)


def cmd_rank(args, resources: Resources) -> int:
    category = AppCategory.from_name(args.category)
    ranking = load_ranking(args, resources)
    if args.format == "json":
        emit_json({"category": category.value, **ranking.to_dict()})
    else:
        print_ranking(ranking, category)
    return EXIT_OK


# =============================================================================
# profile
# =============================================================================

def profile_from_responses(path: str, gender_name: Optional[str], resources: Resources, band: float) -> TraitProfile:
    response = read_document(path, PersonalityParser.parse_response)
    gender = Gender(gender_name) if gender_name else response.gender
    if gender is None:
        raise ValidationError(f"{path}: no gender given (use --gender male|female)")
    return label_traits(score_bfi(response, resources.scoring_key), gender, resources.norms, band)


def _adoption_vector(data) -> AdoptionVector:
    if not isinstance(data, dict):
        raise ValidationError("Adoption document must be an object")
    counts = data.get("counts", {k: v for k, v in data.items() if k != "schema_version"})
    if not isinstance(counts, dict):
        raise ValidationError("counts must be an object")
    try:
        return AdoptionVector.from_dict(counts)
    except (TypeError, ValueError) as e:
        raise ValidationError(str(e))


def profile_from_adoption(path: str, models_path: str) -> TraitProfile:
    vector = read_document(path, _adoption_vector)
    models = read_document(models_path, ModelBankSerializer.from_dict)
    predictions = {model.target: predict(model, vector)[0] for model in models}
    return profile_from_predictions(predictions)


def print_profile(profile: TraitProfile, traits: dict):
    print("\nPersonality profile:")
    print("-" * 80)
    print(f"{'Trait':<20} {'Level':<8} {'Score':<7} {'Characterisation'}")
    print("-" * 80)
    for trait in Trait:
        level = profile[trait]
        score = f"{profile.scores[trait]:.2f}" if profile.scores else "-"
        adjectives = ", ".join(describe_trait(trait, level, traits))
        print(f"{trait.full_name:<20} {level.value:<8} {score:<7} {adjectives}")


def resolve_profile(args, resources: Resources, band: float) -> TraitProfile:
    """Profile from exactly one of --responses, --adoption, --profile, --case or --traits"""
    sources = [name for name in ("responses", "adoption", "profile", "case", "traits")
               if getattr(args, name, None)]
    if len(sources) > 1:
        raise ValidationError(f"Give one profile source, got: {', '.join('--' + s for s in sources)}")
    if args.responses:
        return profile_from_responses(args.responses, args.gender, resources, band)
    if args.adoption:
        if not args.models:
            raise ValidationError("--adoption needs --models (a trained model bank)")
        return profile_from_adoption(args.adoption, args.models)
    if getattr(args, "profile", None):
        return read_document(args.profile, TraitProfile.from_dict)
    if getattr(args, "case", None):
        return REPRESENTATIVE_PROFILES[args.case]
    if getattr(args, "traits", None):
        return parse_trait_levels(args.traits)
    return TraitProfile.neutral()


def parse_trait_levels(text: str) -> TraitProfile:
    """Parse "E-High,A-Low" into a profile; traits not named are Medium"""
    levels = {}
    for item in text.split(","):
        try:
            trait, level = item.strip().split("-", 1)
            levels[Trait(trait.strip().upper()).value] = TraitLevel(level.strip().capitalize()).value
        except ValueError:
            raise ValidationError(f"Invalid trait level {item!r} (expected e.g. 'E-High')")
    return TraitProfile.from_levels(**levels)


def cmd_profile(args, resources: Resources) -> int:
    if not (args.responses or args.adoption):
        raise ValidationError("profile needs --responses or --adoption")
    profile = resolve_profile(args, resources, args.band)
    if args.format == "json":
        emit_json(profile.to_dict())
    else:
        print_profile(profile, resources.traits)
    return EXIT_OK


# =============================================================================
# generate
# =============================================================================

def cmd_generate(args, resources: Resources) -> int:
    features = read_document(args.features, FeatureListParser.parse)
    if not features:
        raise ValidationError(f"{args.features}: no features")

    if args.baseline:
        sentences = baseline_description(features, resources.lexicon)
        if args.format == "json":
            emit_json({
                "baseline": True,
                "sentences": [
                    {"text": text, "feature": f.token, "permission": tag.value if tag else None}
                    for (text, tag), f in zip(sentences, features)
                ],
                "text": " ".join(text for text, _ in sentences),
            })
        else:
            for text, _ in sentences:
                print(text)
        return EXIT_OK

    seed = args.seed if args.seed is not None else entropy_seed()
    profile = resolve_profile(args, resources, args.band)
    ranking = load_ranking(args, resources)
    description = generate_description(features, profile, ranking, seed, resources)

    if args.format == "json":
        emit_json(description.to_dict())
    else:
        print(f"# seed: {seed}")
        for sentence in description.sentences:
            print(sentence.text)
    return EXIT_OK


# =============================================================================
# eval
# =============================================================================

def read_description_text(path: str) -> str:
    """Plain text, or the "text" of a generate JSON document"""
    if path.endswith(".json"):
        data = read_document(path)
        if isinstance(data, dict) and "text" in data:
            return str(data["text"])
        if isinstance(data, dict) and "sentences" in data:
            return PersonalisedDescription.from_dict(data).text
        raise ValidationError(f"{path}: no description text")
    return Path(path).read_text(encoding="utf-8").strip()


def cmd_eval(args, resources: Resources) -> int:
    reports = []
    for path in args.descriptions:
        stats = text_stats(read_description_text(path))
        reports.append({"path": path, "stats": stats.to_dict(), "readability": readability(stats).to_dict()})

    baseline_report = None
    if args.baseline:
        baseline_text = read_description_text(args.baseline)
        stats = text_stats(baseline_text)
        baseline_report = {"path": args.baseline, "stats": stats.to_dict(), "readability": readability(stats).to_dict()}
        stopwords = content_stopwords(resources)
        for path, report in zip(args.descriptions, reports):
            text = read_description_text(path)
            report["content_overlap"] = content_overlap(baseline_text, text, stopwords)
            report["feature_overlap"] = feature_overlap(baseline_text, text, resources)
            report["fre_gain"] = report["readability"]["fre"] - baseline_report["readability"]["fre"]

    if args.format == "json":
        emit_json({"descriptions": reports, "baseline": baseline_report})
        return EXIT_OK

    print("\nReadability:")
    print("-" * 110)
    print(f"{'Description':<40} {'FRE':<8} {'FKGL':<8} {'GFS':<8} {'SMOG':<8} {'ARI':<8} {'Content':<8} {'Feature':<8}")
    print("-" * 110)
    rows = reports + ([baseline_report] if baseline_report else [])
    for report in rows:
        scores = report["readability"]
        name = Path(report["path"]).name + (" (baseline)" if report is baseline_report else "")
        print(f"{name:<40} {scores['fre']:<8.2f} {scores['fkgl']:<8.2f} {scores['gfs']:<8.2f} "
              f"{scores['smog']:<8.2f} {scores['ari']:<8.2f} {_fmt(report.get('content_overlap'))} "
              f"{_fmt(report.get('feature_overlap'))}")
    return EXIT_OK


# =============================================================================
# train / synth
# =============================================================================

def cmd_train(args, resources: Resources) -> int:
    datasets = read_document(args.dataset, DatasetCodec.from_dict)
    if not datasets:
        raise ValidationError(f"{args.dataset}: no targets")
    seed = args.seed if args.seed is not None else 0
    families = [ModelFamily(name) for name in args.families] if args.families else list(ModelFamily)
    results = evaluate_targets(datasets, families, seed=seed, test_fraction=args.test_fraction,
                               trials=args.trials, max_depth=args.max_depth)
    table = correlation_table(datasets)

    if args.output:
        write_json(args.output, ModelBankSerializer.to_dict([r.best_model for r in results]))
        logger.info(f"Wrote {len(results)} models to {args.output}")

    if args.format == "json":
        emit_json({
            "seed": seed,
            "targets": [
                {
                    "target": r.target.label,
                    "precisions": {f.value: p for f, p in r.precisions.items()},
                    "best_family": r.best_family.value,
                    "baseline": r.baseline,
                    "uplift": r.uplift,
                }
                for r in results
            ],
            "correlations": {
                target.label: {category.value: r for category, r in row.items()}
                for target, row in table.items()
            },
        })
        return EXIT_OK

    print("\nTarget group precision (held-out):")
    print("-" * 80)
    header = " ".join(f"{f.value:<14}" for f in families)
    print(f"{'Target':<8} {header} {'Best':<14} {'Random':<8} {'Uplift':<8}")
    print("-" * 80)
    for r in results:
        cells = " ".join(f"{_fmt(r.precisions[f], 14)}" for f in families)
        print(f"{r.target.label:<8} {cells} {r.best_family.value:<14} {_fmt(r.baseline)} {_fmt(r.uplift)}")

    print("\nPearson r, category count vs. group membership:")
    print("-" * 100)
    print(f"{'Target':<8} " + " ".join(f"{c.value[:8]:<9}" for c in CATEGORY_ORDER))
    print("-" * 100)
    for target, row in table.items():
        print(f"{target.label:<8} " + " ".join(f"{_fmt(row[c], 9)}" for c in CATEGORY_ORDER))
    return EXIT_OK


def cmd_synth(args, resources: Resources) -> int:
    patterns = resources.correlation_spec
    if args.spec:
        patterns = read_document(args.spec, PersonalityParser.parse_correlation_spec)
    seed = args.seed if args.seed is not None else entropy_seed()
    datasets = synth_datasets(patterns, args.n, seed)
    document = {**DatasetCodec.to_dict(datasets), "seed": seed}
    if args.output:
        write_json(args.output, document)
        print(f"Wrote {len(datasets)} datasets of {args.n} rows to {args.output} (seed {seed})", file=sys.stderr)
    else:
        print(json.dumps(document, indent=2))
    return EXIT_OK


# =============================================================================
# Entry point
# =============================================================================

COMMANDS = {
    "rank": cmd_rank,
    "profile": cmd_profile,
    "generate": cmd_generate,
    "eval": cmd_eval,
    "train": cmd_train,
    "synth": cmd_synth,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', '-c', help='Run config file (default: $PERSCRIBE_CONFIG or the shipped config)')
    common.add_argument('--format', choices=('json', 'text'), help='Output format (default from config)')
    common.add_argument('--seed', type=parse_seed, help='64-bit unsigned seed')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')

    profile_source = argparse.ArgumentParser(add_help=False)
    profile_source.add_argument('--responses', help='BFI-44 response file')
    profile_source.add_argument('--gender', choices=('male', 'female'), help='Norm table for BFI scoring')
    profile_source.add_argument('--adoption', help='App adoption counts file')
    profile_source.add_argument('--models', help='Model bank written by train')

    ranking_source = argparse.ArgumentParser(add_help=False)
    ranking_source.add_argument('--snapshot', help='Permission settings snapshot file')
    ranking_source.add_argument('--category', default='Other', help='Category of the app being installed')

    parser = argparse.ArgumentParser(
        description='PERSCRIBE: personalised app security descriptions',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Rank permissions for a Social app from a settings snapshot
  %(prog)s rank snapshot.json --category Social --format text

  # Profile a user from BFI-44 answers
  %(prog)s profile --responses answers.json --gender female

  # Generate a description for an E-High/A-High reader
  %(prog)s generate features.json --traits E-High,A-High --seed 7 --format text

  # Fixed-template baseline for the same features
  %(prog)s generate features.json --baseline --format text > baseline.txt

  # Compare readability and content against the baseline
  %(prog)s eval personalised.json --baseline baseline.txt

  # Synthesize training data, then train and write a model bank
  %(prog)s synth -n 600 --seed 1 --output data.json
  %(prog)s train data.json --output models.json
        """
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')

    rank = sub.add_parser('rank', parents=[common], help='Rank permissions by attention level')
    rank.add_argument('snapshot', help='Permission settings snapshot file')
    rank.add_argument('--category', default='Other', help='Category of the app being installed')
    rank.set_defaults(func=cmd_rank)

    profile = sub.add_parser('profile', parents=[common, profile_source], help='Big Five profile')
    profile.add_argument('--band', type=float, help='Medium band in standard deviations (default from config)')
    profile.set_defaults(func=cmd_profile)

    generate = sub.add_parser('generate', parents=[common, profile_source, ranking_source],
                              help='Generate a personalised description')
    generate.add_argument('features', help='Feature list file')
    generate.add_argument('--profile', help='Trait profile file (as written by profile)')
    generate.add_argument('--case', choices=sorted(REPRESENTATIVE_PROFILES), help='Representative profile')
    generate.add_argument('--traits', help='Trait levels, e.g. E-High,A-Low (others Medium)')
    generate.add_argument('--baseline', action='store_true', help='Emit the fixed-template baseline instead')
    generate.add_argument('--band', type=float, help='Medium band in standard deviations (default from config)')
    generate.set_defaults(func=cmd_generate)

    evaluate = sub.add_parser('eval', parents=[common], help='Readability and content overlap report')
    evaluate.add_argument('descriptions', nargs='+', help='Description files (text or generate JSON)')
    evaluate.add_argument('--baseline', help='Baseline description to compare against')
    evaluate.set_defaults(func=cmd_eval)

    train = sub.add_parser('train', parents=[common], help='Train trait-group classifiers')
    train.add_argument('dataset', help='Labelled dataset file (as written by synth)')
    train.add_argument('--output', '-o', help='Model bank file to write')
    train.add_argument('--families', nargs='+', choices=[f.value for f in ModelFamily],
                       help='Model families to compare (default: all)')
    train.add_argument('--test-fraction', type=float, default=DEFAULT_TEST_FRACTION,
                       help=f'Held-out share (default: {DEFAULT_TEST_FRACTION})')
    train.add_argument('--trials', type=int, default=DEFAULT_BASELINE_TRIALS,
                       help=f'Random baseline trials (default: {DEFAULT_BASELINE_TRIALS})')
    train.add_argument('--max-depth', type=int, help='Decision tree depth (default from config)')
    train.set_defaults(func=cmd_train)

    synth = sub.add_parser('synth', parents=[common], help='Synthesize labelled adoption data')
    synth.add_argument('--spec', help='Correlation spec file (default from config)')
    synth.add_argument('-n', type=int, default=600, help='Rows per target (default: 600)')
    synth.add_argument('--output', '-o', help='Dataset file to write (default: stdout)')
    synth.set_defaults(func=cmd_synth)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = load_run_config(args.config)
        if args.format is None:
            args.format = config.output_format
        if args.seed is None:
            args.seed = config.seed
        if getattr(args, "band", None) is None:
            args.band = config.band
        if getattr(args, "max_depth", False) is None:
            args.max_depth = config.max_tree_depth
        resources = Resources.load(config)
        return args.func(args, resources)
    except OSError as e:
        print(f"Error: {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
        return EXIT_ERROR
    except PerscribeError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
