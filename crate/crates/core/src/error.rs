use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-formed presentation: {0}")]
    IllFormedPresentation(String),
    #[error("rewriting system is incomplete (completion capped)")]
    IncompleteSystem,
    #[error("completion exceeded its caps ({rules} rules, max length {max_len})")]
    CapExceeded { rules: usize, max_len: usize },
    #[error("element does not belong to this group family")]
    FamilyMismatch,
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("undecided within search radius {0}")]
    Undecided(usize),
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("group is not two-ended")]
    NotTwoEnded,
    #[error("subgroup is not free: {0}")]
    NotFree(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("window radius {0} too small")]
    WindowTooSmall(usize),
    #[error("cut hint unsupported: {0}")]
    HintUnsupported(String),
    #[error("generating set does not generate the group: {0}")]
    NotGenerating(String),
    #[error("too few generators: {0}")]
    TooFewGenerators(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("inner object invalid: {0}")]
    InnerInvalid(String),
    #[error("not a perfect matching: {0}")]
    NotAMatching(String),
    #[error("block has no Hamilton cycle: {0}")]
    BlockNotHamiltonian(String),
    #[error("generating set does not meet the core")]
    CoreNotMet,
    #[error("generating set is not minimal: {0}")]
    NotMinimal(String),
    #[error("core is not of order two")]
    CoreNotZ2,
    #[error("rewriting completion failed: {0}")]
    CompletionFailed(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("quotient Cayley graph has no Hamilton cycle")]
    QuotientNotHamiltonian,
    #[error("element has finite order")]
    NotInfiniteOrder,
    #[error("twist pattern failed validation")]
    UnsupportedTwistPattern,
    #[error("cycle product does not generate the subgroup")]
    ProductDoesNotGenerate,
    #[error("not a Hamilton cycle of the Schreier graph: {0}")]
    NotHamiltonInSchreier(String),
    #[error("generating-set search exhausted")]
    SearchExhausted,
    #[error("free group rank must be at least 2")]
    BadRank,
    #[error("fiber missing: {0}")]
    FiberMissing(String),
    #[error("locality violated: {0}")]
    LocalityViolated(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("unroll range too short: {0}")]
    UnrollTooShort(String),
    #[error("no cuts supplied for a two-ended object")]
    CutsMissing,
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("no construction route applies: {0}")]
    UnsupportedRoute(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
