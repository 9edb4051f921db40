//! Loads every bundled model file and prints what it describes.

use jscc::model::Model;

fn main() -> jscc::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/models");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "json")) {
        let m = Model::load(path)?;
        let channel = m.channel.as_ref().map_or("none".to_string(), |c| c.kind().to_string());
        println!(
            "{:<32} vars {:?}  channel {:<9} H(S1,S2) = {:.4}",
            path.file_name().unwrap().to_string_lossy(),
            m.joint.names(),
            channel,
            m.joint.entropy(&["S1", "S2"])?
        );
        for (k, v) in &m.labels {
            println!("    {k} = {v}");
        }
    }
    Ok(())
}
