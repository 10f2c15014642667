"""Signed vote networks, minimum-imbalance partitions and community-detection baselines."""

from ._core import (
    NEW_CLUSTER,
    InputError,
    SignedGraph,
    VoteDataset,
    VoteValue,
    WeightTable,
    agreement_matrix,
    brute_force_optimum,
    filter_dataset,
    generate_synthetic_votes,
    graph_from_dataset,
    imbalance,
    load_dataset,
    move_delta,
    nmi,
    normalize,
    parse_vote_token,
    planted_blocs,
    positive_modularity,
    read_partition,
    read_signed_graph,
    run_baseline,
    save_dataset,
    score_pair,
    solve,
    write_partition,
    write_signed_graph,
)

__version__ = "0.1.0"
