use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported field GF({p}^{k})")]
    UnsupportedField { p: u64, k: u32 },
    #[error("value {value} is not an element of GF({q})")]
    NotInField { value: u64, q: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands live in different fields GF({0}) and GF({1})")]
    MixedFields(u32, u32),
    #[error("matrix dimensions {0} and {1} are incompatible")]
    DimensionMismatch(usize, usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("the zero matrix has no projective class")]
    ZeroMatrix,

    #[error("unsupported group spec `{0}`")]
    UnsupportedGroup(String),
    #[error("cannot parse group spec `{0}`: {1}")]
    GroupSpecParse(String, String),
    #[error("generator data `{name}`: {reason}")]
    DataFile { name: String, reason: String },
    #[error("generator data `{name}` closes to order {got}, file records {expected}")]
    DataOrderMismatch { name: String, expected: u64, got: u64 },
    #[error("constructed {name} has order {got}, expected {expected}")]
    OrderMismatch { name: String, expected: u64, got: u64 },
    #[error("group order exceeds cap {cap}")]
    CapExceeded { cap: u64 },
    #[error("generators act on different degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("permutation is not an element of the group")]
    NotInGroup,
    #[error("{0} does not divide the group order {1}")]
    PrimeNotDividing(u64, u64),
    #[error("supplied map is not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("{0} is not a positive integer")]
    NonPositive(i64),
    #[error("{0} does not divide the group order {1}")]
    NotDivisor(u64, u64),
    #[error("group order {0} is odd; a (2,m,n)-group has even order")]
    OddOrder(u64),
    #[error("Euler characteristic {num}/{den} is not an integer")]
    NonIntegralChi { num: i128, den: i128 },
    #[error("cannot factorize zero")]
    FactorZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("product gh is the identity")]
    IdentityProduct,
    #[error("product gh has order {0}, not 2")]
    ProductNotInvolution(u64),
    #[error("pair generates a subgroup of order {sub} < {order}")]
    DoesNotGenerate { sub: u64, order: u64 },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("graph has {0} vertices, solver budget is 32")]
    VertexBudget(usize),

    #[error("unsupported Lie family: {0}")]
    UnsupportedFamily(String),
    #[error("{0} is excluded: not simple")]
    NotSimple(String),

    #[error("a = {a} is not congruent to 24 mod 28: 29 * {floor} != 2^{a} + 9")]
    FamilyExponent { a: u32, floor: u64 },
    #[error("a = {0} exceeds the 64-bit range of the family constructor")]
    FamilyTooLarge(u32),
    #[error("structure witness: {0}")]
    Witness(String),
}
