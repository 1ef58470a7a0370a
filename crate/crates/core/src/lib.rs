pub mod algebra;
pub mod circuit;
pub mod corpus;
pub mod incidence;
pub mod membership;
pub mod pit;
pub mod quadratic;
pub mod report;
pub mod sg;
pub mod trdeg;
pub mod verdict;
