use std::io::Write;

fn main() {
    if let Ok(eps) = std::env::var("HARMONICA_EPS") {
        match eps.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => {
                harmonica::scalar::init_tolerance(v);
            }
            _ => {
                eprintln!("error: HARMONICA_EPS must be a positive number, got `{eps}`");
                std::process::exit(harmonica_cli::EXIT_USAGE);
            }
        }
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = harmonica_cli::run(std::env::args_os().skip(1), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
