fn main() {
    let run = kscolor_cli::run(std::env::args_os());
    if let Some(report) = &run.report {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    }
    if let Some(message) = &run.message {
        eprintln!("{message}");
    }
    std::process::exit(run.code);
}
