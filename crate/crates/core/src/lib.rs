//! Galois groups of polynomials f(x, t) over F_q(t).

pub mod additive;
pub mod cli;
pub mod error;
pub mod ffield;
pub mod identify;
pub mod paperprops;
mod par;
pub mod permgrp;
pub mod polyring;
pub mod reproduce;
pub mod resolvent;
pub mod series;
mod text;

pub use error::{Error, Result};
