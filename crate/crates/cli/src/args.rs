use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact p-adic beta-expansions, base classification and shift radix systems.
///
/// Bases are given by `--a "a1,...,an"`, the coefficients of the minimal
/// polynomial written as x^n - a1 x^(n-1) - ... - an. Note the signs: the
/// polynomial x^2 + x/2 + 1/2 is `--a "-1/2,-1/2"`.
#[derive(Debug, Parser)]
#[command(name = "padic-beta", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygon of c0 + c1 x + ... + cm x^m.
    Np {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Classify the dominant root as PC, SC or neither.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// p-adic digits of a Pisot-Chabauty base to the given precision.
    Digits {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        precision: u32,
    },
    /// Beta-expansion of an element c0 + c1 β + ... + c(n-1) β^(n-1).
    Expand {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Independently re-check the first K digits.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Orbit of an integer vector under a shift radix system.
    SrsOrbit {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = MapKind::Tilde)]
        map: MapKind,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Decide whether every orbit of the shift radix system ends in 0.
    SrsD0 {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        witness_cap: Option<usize>,
        #[arg(long)]
        orbit_cap: Option<usize>,
    },
    /// Certify or refute the finiteness property of a base.
    FinCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        witness_cap: Option<usize>,
        #[arg(long)]
        orbit_cap: Option<usize>,
    },
    /// Rasterize the two-dimensional parameter region to a binary PGM.
    Raster {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 201)]
        width: usize,
        #[arg(long, default_value_t = 201)]
        height: usize,
        /// x0,x1,y0,y1 (r1 horizontal, r2 vertical).
        #[arg(long = "box", allow_hyphen_values = true, default_value = "-1,1,-2,2")]
        bounds: String,
        #[arg(long)]
        witness_cap: Option<usize>,
        #[arg(long)]
        orbit_cap: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Tilde,
    Ceil,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Tilde => "tilde",
            MapKind::Ceil => "ceil",
        }
    }
}
