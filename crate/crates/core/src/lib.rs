//! Exact computation of the matrix coefficients `σ(u,v,w)` of intertwining
//! operators on Iwahori-fixed vectors of unramified principal series, for
//! finite Weyl groups, together with the supporting Coxeter combinatorics.

pub mod coxeter;
pub mod polyring;
pub mod demazure;
pub mod hecke;
pub mod kl;
pub mod rpoly;
pub mod sigma;
pub mod suites;
