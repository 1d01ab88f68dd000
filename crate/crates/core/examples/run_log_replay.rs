//! Drive the command-line front end in process, log two runs to a scratch
//! file, and replay the log.

use ciql::cli::{read_run_log, replay, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let log = std::env::temp_dir().join(format!("ciql-example-{}.jsonl", std::process::id()));
    let log_arg = log.to_string_lossy().into_owned();
    let runs: [&[&str]; 2] = [
        &["taut", "porteous", "--n", "8", "--a", "4", "--b", "1", "--set", "psi=0"],
        &["sample-curve", "--p", "13", "--seed", "2"],
    ];
    for args in runs {
        let argv = ["ciql", "--log", &log_arg].into_iter().chain(args.iter().copied());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        println!("{} -> exit {code}, {} bytes of output", args.join(" "), out.len());
    }
    let (records, malformed) = read_run_log(&log)?;
    for (line, record) in &records {
        println!("line {line}: {:?} replays identically: {}", record.command, replay(record)?);
    }
    println!("malformed lines: {malformed:?}");
    std::fs::remove_file(&log)?;
    Ok(())
}
