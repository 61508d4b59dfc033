//! Writes the built-in fixtures as JSON files into the given directory.

use std::path::PathBuf;

use rbpair_core::group::fixture_groups;
use rbpair_core::io::{to_json, GroupFile, GroupMapFile, LieAlgebraFile, QuadraticRbFile, RbLieFile};
use rbpair_core::lie::{aff1, sl2};
use rbpair_core::quadratic::cotangent_fixture;
use rbpair_core::rb_lie::{abelian_half_fixture, sl2_projection_fixture};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, text: String| std::fs::write(dir.join(name), text);
    write("sl2.json", to_json(&LieAlgebraFile::from_algebra(&sl2())))?;
    write("sl2_projection.json", to_json(&RbLieFile::from_rb(&sl2_projection_fixture())))?;
    write("abelian_half.json", to_json(&RbLieFile::from_rb(&abelian_half_fixture())))?;
    write("aff1_cotangent.json", to_json(&QuadraticRbFile::from_quadratic(&cotangent_fixture(&aff1()))))?;
    for (name, g) in fixture_groups() {
        write(&format!("group_{}.json", name.to_lowercase()), to_json(&GroupFile::from_group(&g)))?;
    }
    write("z4_squaring.json", to_json(&GroupMapFile::new(vec![0, 2, 0, 2])))?;
    Ok(())
}
