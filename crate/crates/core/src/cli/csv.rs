//! CSV writers. Output is UTF-8 with LF line endings; floats use Rust's
//! shortest round-trip formatting, so identical inputs give identical bytes.

use std::io::{self, Write};

use crate::force::{ForceRecord, ForceUnit};
use crate::squeeze::OpoSpectrum;
use crate::sweep::CrossoverResult;

pub const FORCE_HEADER: &str = "config,quadrature,degree,phi,delta,beta,averaging,force_unit,force";

/// Shortest round-trip decimal; negative zero prints as `0`.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

pub fn emit_csv<W: Write>(records: &[ForceRecord], unit: ForceUnit, out: &mut W) -> io::Result<()> {
    if records.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "empty force table",
        ));
    }
    writeln!(out, "{FORCE_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.scheme.label(),
            r.quadrature.label(),
            fmt_float(r.degree),
            fmt_float(r.phi),
            fmt_float(r.delta),
            fmt_float(r.beta),
            r.averaging.label(),
            unit.symbol(),
            fmt_float(r.force_in(unit)),
        )?;
    }
    Ok(())
}

pub fn emit_opo_csv<W: Write>(rows: &[(f64, OpoSpectrum)], out: &mut W) -> io::Result<()> {
    writeln!(out, "omega,n,m")?;
    for (omega, s) in rows {
        writeln!(
            out,
            "{},{},{}",
            fmt_float(*omega),
            fmt_float(s.n),
            fmt_float(s.m)
        )?;
    }
    Ok(())
}

pub fn emit_crossover_csv<W: Write>(
    r: &CrossoverResult,
    unit: ForceUnit,
    out: &mut W,
) -> io::Result<()> {
    writeln!(
        out,
        "beta_star,bracket_lo,bracket_hi,force_unit,residual,iterations"
    )?;
    writeln!(
        out,
        "{},{},{},{},{},{}",
        fmt_float(r.beta_star),
        fmt_float(r.bracket.0),
        fmt_float(r.bracket.1),
        unit.symbol(),
        fmt_float(r.residual * unit.from_half()),
        r.iterations
    )
}

pub fn emit_doppler_csv<W: Write>(
    gamma_hz: f64,
    gamma: f64,
    kelvin: f64,
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "gamma_hz,gamma_rad_s,temperature_k")?;
    writeln!(
        out,
        "{},{},{}",
        fmt_float(gamma_hz),
        fmt_float(gamma),
        fmt_float(kelvin)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{Quadrature, Scheme};
    use crate::force::AveragingMode;

    fn record(force: f64) -> ForceRecord {
        ForceRecord {
            scheme: Scheme::SqueezedVacuum,
            quadrature: Quadrature::Noisy,
            degree: 0.75,
            phi: 0.1,
            delta: -0.0,
            beta: 3.0,
            averaging: AveragingMode::AbsMean,
            force,
        }
    }

    #[test]
    fn force_rows() {
        let mut buf = Vec::new();
        emit_csv(&[record(1.5), record(-0.0)], ForceUnit::Half, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "config,quadrature,degree,phi,delta,beta,averaging,force_unit,force\n\
             svsc,noisy,0.75,0.1,0,3,absmean,hbar*k*gamma/2,1.5\n\
             svsc,noisy,0.75,0.1,0,3,absmean,hbar*k*gamma/2,0\n"
        );
    }

    #[test]
    fn full_unit_halves_force() {
        let mut buf = Vec::new();
        emit_csv(&[record(1.5)], ForceUnit::Full, &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .ends_with(",hbar*k*gamma,0.75\n"));
    }

    #[test]
    fn empty_table_is_rejected() {
        assert!(emit_csv(&[], ForceUnit::Half, &mut Vec::new()).is_err());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.5e-300, 6.02e23, -7.25] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
