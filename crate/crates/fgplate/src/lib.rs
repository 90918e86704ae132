//! Finite-element bending and free-vibration analysis of functionally
//! graded sandwich plates.
//!
//! The library builds symmetric stiffness/mass systems for simply
//! supported rectangular sandwich plates on an 8-node serendipity
//! quadrilateral, for a family of shear-deformation theories (HSDT13,
//! HSDT11, HSDT9, FSDT), and produces nondimensional deflections,
//! stresses and frequency parameters matching the published benchmark
//! conventions.

pub mod assembly;
pub mod banded;
pub mod config;
pub mod element;
pub mod error;
pub mod golden;
pub mod kinematics;
pub mod material;
pub mod mesh;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod rigidity;
pub mod runner;
pub mod solve;
pub mod stress;

pub use error::{Error, Result};
