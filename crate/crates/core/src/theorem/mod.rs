//! The constructive content of the bound: the induced equivariant map and
//! audited certificates.

pub mod certificate;
pub mod lambda;

pub use certificate::{
    acted_hom, bound_certificate, classify_test_graph, hom_bound_certificate, test_graph_check, BoundCertificate,
    ChainLink, PipelineOptions, TestGraphKind, TestGraphReport,
};
pub use lambda::{construct_lambda, construct_lambda_unchecked, verify_lambda, LambdaMap, LambdaReport};
