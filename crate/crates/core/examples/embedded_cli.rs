//! Driving the command line from code, capturing its output.

use compose_approx::cli::run_with;

fn main() {
    let calls: [&[&str]; 4] = [
        &["bell", "10"],
        &["faa", "--f", "exp(y1)", "--g", "sin(x)", "--x0", "0", "--r", "3"],
        &["bestapprox", "--f", "x^2", "--m", "1", "--gamma", "0", "--delta", "0"],
        &["norm", "--f", "x^3", "--r", "2", "--gamma", "2"],
    ];
    for args in calls {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("compose-approx").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        println!("$ compose-approx {}   [exit {code}]", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
