//! Front end for the `wildcover` binary: argument model, spec files and command runners.

pub mod commands;
pub mod expr;
pub mod specfile;

pub use commands::{run, Output};
pub use specfile::{SpecFile, VDirective};

use clap::{Args, Parser, Subcommand};
use wildcover::additive::DEFAULT_AMBIENT_BOUND;

#[derive(Parser, Debug)]
#[command(name = "wildcover", version, about = "Exact checks for Artin-Schreier big actions")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest extension degree searched when splitting additive polynomials.
    #[arg(long, global = true, default_value_t = DEFAULT_AMBIENT_BOUND)]
    pub ambient_bound: usize,
    /// Largest group enumerated by `group`.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub closure_bound: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// Coefficient field: `F_{p^m}`, optionally with an explicit modulus in `t`.
#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(short, long, default_value_t = 5)]
    pub p: u32,
    #[arg(short, long, default_value_t = 1)]
    pub m: usize,
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced representative of the AS class of a polynomial.
    Reduce {
        poly: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Smallest n with the polynomial in Sigma_n.
    Sigma {
        poly: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Ad_f for f = X S(X) + cX, with its splitting degree.
    Palindromic {
        poly: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Adapted basis of the functions in a spec file.
    Adapt { input: String },
    /// Full instance verification of a spec file.
    Verify { input: String },
    /// Different, genus, order and ratio of a spec file.
    Invariants { input: String },
    /// Emit a spec file for an explicit family.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
        /// Additive polynomial S0(X) to base-change along, e.g. "X^5 - X".
        #[arg(long, global = true)]
        base_change: Option<String>,
    },
    /// Enumerate the automorphism group of a spec file.
    Group {
        input: String,
        /// Also report the order of this generator (0-based).
        #[arg(long)]
        element_order: Option<usize>,
    },
    /// Isomorphism criterion for two n = 2 universal parameter pairs.
    Iso {
        #[arg(long)]
        b0: String,
        #[arg(long)]
        b5: String,
        #[arg(long = "b0-prime")]
        b0_prime: String,
        #[arg(long = "b5-prime")]
        b5_prime: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyKind {
    /// S(X)^{i+1}/(i+1)! with S = X^p - X, plus the Witt lift in slot p-1.
    Special {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: usize,
    },
    /// The hard-coded p = 5 families; parameters are field elements in t.
    Universal {
        #[arg(short, long)]
        n: u8,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        b0: String,
        #[arg(long)]
        b5: Option<String>,
        #[arg(long)]
        c7: Option<String>,
        #[arg(long)]
        c9: Option<String>,
        #[arg(long)]
        d8: Option<String>,
        #[arg(long)]
        d11: Option<String>,
        #[arg(long)]
        d13: Option<String>,
    },
    /// f_i = X (gamma_i S1)(X) + c_i X with independent gammas in F_{p^d}.
    Gamma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        /// Comma-separated gammas, the first equal to 1.
        #[arg(long)]
        gammas: String,
        /// Additive polynomial in X, e.g. "X^25".
        #[arg(long)]
        s1: String,
        /// Comma-separated constants c_i (default all zero).
        #[arg(long)]
        constants: Option<String>,
    },
}
