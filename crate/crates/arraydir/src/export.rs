//! CSV export of scan grids. Angles in degrees; one row per grid point,
//! row-major in θ then φ.

use std::io::Write;

use arraydir_core::directivity::ScanGrid;

use crate::error::AppResult;

pub const DIRECTIVITY_HEADER: [&str; 4] = ["theta_deg", "phi_deg", "directivity_linear", "directivity_dbi"];
pub const INTENSITY_HEADER: [&str; 3] = ["theta_deg", "phi_deg", "intensity"];

pub fn write_directivity_csv<W: Write>(grid: &ScanGrid, out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DIRECTIVITY_HEADER)?;
    for i in 0..grid.theta_steps {
        for j in 0..grid.phi_steps {
            let r = grid.result(i, j);
            let (theta, phi) = grid.degrees(i, j);
            w.write_record([
                theta.to_string(),
                phi.to_string(),
                r.linear.to_string(),
                r.dbi.to_string(),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Same layout as [`write_directivity_csv`], with the unnormalized |F|² values of an
/// intensity-only grid.
pub fn write_intensity_csv<W: Write>(grid: &ScanGrid, out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INTENSITY_HEADER)?;
    for i in 0..grid.theta_steps {
        for j in 0..grid.phi_steps {
            let (theta, phi) = grid.degrees(i, j);
            w.write_record([theta.to_string(), phi.to_string(), grid.linear(i, j).to_string()])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
