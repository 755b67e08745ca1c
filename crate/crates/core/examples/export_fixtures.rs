//! Writes the fixture graphs as JSON documents into a directory
//! (default `data/`).

use std::fs;
use std::path::PathBuf;

use breakdiv::fixtures;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    fs::create_dir_all(&dir)?;
    let write = |name: &str, value: serde_json::Value| {
        let text = serde_json::to_string_pretty(&value).expect("documents serialize") + "\n";
        fs::write(dir.join(format!("{name}.json")), text)
    };
    for (name, g) in fixtures::all_graphs() {
        write(
            name,
            serde_json::to_value(g.to_document()).expect("graph serializes"),
        )?;
    }
    for (name, p) in fixtures::all_planar() {
        let doc = p.ribbon().to_document(Some(p.outer()));
        write(
            &format!("{name}-ribbon"),
            serde_json::to_value(doc).expect("ribbon serializes"),
        )?;
    }
    for (name, r) in [
        ("bng1", fixtures::bng1()),
        ("bng2", fixtures::bng2()),
        ("bng1-subdivision", fixtures::bng1_subdivision()),
    ] {
        write(
            &format!("{name}-ribbon"),
            serde_json::to_value(r.to_document(None)).expect("ribbon serializes"),
        )?;
    }
    let k4 = fixtures::k4();
    let ord = &fixtures::orderings(&k4, 3, 1)[2];
    write(
        "k4-order",
        serde_json::to_value(ord.to_document(&k4)).expect("ordering serializes"),
    )?;
    let theta = fixtures::theta();
    let reference = breakdiv::EdgeOrdering::reference(&theta);
    write(
        "theta-order",
        serde_json::to_value(reference.to_document(&theta)).expect("ordering serializes"),
    )?;
    Ok(())
}
