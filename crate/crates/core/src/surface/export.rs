//! Grid export: CSV of `f`, `N` and the angles; Wavefront OBJ meshes.

use std::io::Write;

use crate::cliffalg::SplitQuat;
use crate::error::Result;

use super::FlatSurfacePatch;

pub const CSV_HEADER: &str = "u,v,x0,x1,x2,x3,N0,N1,N2,N3,omega1,omega2";

/// How a point of the quadric is placed in 3-space for the mesh.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Drop the `x1` coordinate.
    DropX1,
    /// Hopf projection `a·k·ā` onto the pseudosphere.
    Hopf,
}

/// One row per grid node, row-major in `(u, v)`.
pub fn write_csv<W: Write>(patch: &FlatSurfacePatch, mut w: W) -> Result<()> {
    let g = patch.grid();
    writeln!(w, "{CSV_HEADER}")?;
    let w2: Vec<f64> = g.v.nodes().map(|v| patch.omega2(v)).collect::<Result<_>>()?;
    for i in 0..g.u.len {
        let u = g.u.at(i);
        let w1 = patch.omega1(u)?;
        for j in 0..g.v.len {
            let k = g.index(i, j);
            let (f, n) = (patch.f_nodes()[k].to_array(), patch.n_nodes()[k].to_array());
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                u, g.v.at(j), f[0], f[1], f[2], f[3], n[0], n[1], n[2], n[3], w1, w2[j]
            )?;
        }
    }
    Ok(())
}

fn place(f: SplitQuat, proj: Projection) -> [f64; 3] {
    match proj {
        Projection::DropX1 => {
            let a = f.to_array();
            [a[0], a[2], a[3]]
        }
        Projection::Hopf => {
            let h = (f * SplitQuat::K * f.conj()).to_array();
            [h[1], h[2], h[3]]
        }
    }
}

/// Triangulated mesh of the grid, two triangles per cell.
pub fn write_obj<W: Write>(patch: &FlatSurfacePatch, proj: Projection, mut w: W) -> Result<()> {
    let g = patch.grid();
    writeln!(w, "o patch")?;
    for f in patch.f_nodes() {
        let p = place(*f, proj);
        writeln!(w, "v {:.12e} {:.12e} {:.12e}", p[0], p[1], p[2])?;
    }
    // OBJ indices are 1-based
    let id = |i: usize, j: usize| g.index(i, j) + 1;
    for i in 0..g.u.len.saturating_sub(1) {
        for j in 0..g.v.len.saturating_sub(1) {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            writeln!(w, "f {a} {b} {c}")?;
            writeln!(w, "f {a} {c} {d}")?;
        }
    }
    Ok(())
}
