"""Shannon entropies and signed mutual information (transmission) in two,
three, and four dimensions over nominal case records."""

from ._core import (
    CaseRecord,
    ContingencyTable,
    ConvergenceError,
    Dataset,
    DecompositionResult,
    EmptyDatasetError,
    EntropyReport,
    FormatError,
    GroupContribution,
    IoError,
    IpfResult,
    UsageError,
    __version__,
    build_table,
    build_table_parallel,
    conditional_transmission,
    csv_header,
    csv_row,
    decompose_by_dimension,
    decompose_external,
    drop_empty_labels,
    entropy,
    full_report,
    interaction_entropy_difference,
    ipf_fit,
    krippendorff_interaction,
    marginal,
    merge,
    parse_dataset,
    parse_line,
    project,
    read_dataset,
    run_cli,
    transmission,
)

__all__ = [name for name in dir() if not name.startswith("_")]
