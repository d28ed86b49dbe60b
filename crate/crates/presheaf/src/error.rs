use thiserror::Error;

/// Input data that violates a category, functor, presheaf or naturality law.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("name {0} is used twice")]
    DuplicateName(String),
    #[error("composite {g}∘{f} is missing from the table")]
    MissingComposite { g: String, f: String },
    #[error("composite {g}∘{f} = {h} has the wrong type")]
    IllTypedComposite { g: String, f: String, h: String },
    #[error("composite {g}∘{f} is given as both {first} and {second}")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    #[error("identity law fails at {f}")]
    Identity { f: String },
    #[error("associativity fails at ({h}, {g}, {f}): ({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}")]
    Associativity {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },
    #[error("not a functor: {0}")]
    Functor(String),
    #[error("not a presheaf: {0}")]
    Presheaf(String),
    #[error("not a dependent presheaf: {0}")]
    Dependent(String),
    #[error("not natural: {0}")]
    Naturality(String),
    #[error("shapes do not line up: {0}")]
    Shape(String),
}

/// A construction refused to run.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KanError {
    #[error("{0}")]
    Law(#[from] LawError),
    #[error("{count} candidate families at {object} exceed the bound {bound}")]
    TooLarge { object: String, count: u128, bound: u128 },
    #[error("more than {0} maps to enumerate")]
    TooManyMaps(usize),
}
