//! The batch workflow without the binary: parse a problem file, solve,
//! tabulate, and read the document back.

use heun::cli::{cmd_eval, cmd_verify, ProblemSpec, ResultDocument};

const PROBLEM: &str = "\
# beta is solved from the exponent relation
alpha = -2
beta = riemann
gamma = 1
delta = 1
epsilon = 0
a = 2
class = I
lambda_min = -20
lambda_max = 0
max_count = 2
";

fn main() -> Result<(), heun::cli::CliError> {
    let spec = ProblemSpec::parse(PROBLEM)?;
    let params = spec.resolve()?;
    println!("solved beta = {}", params.beta);

    let doc = cmd_eval(&spec, &[0.0, 0.25, 0.5])?;
    print!("{}", doc.to_csv());

    let verified = cmd_verify(&spec, None)?;
    let text = verified.to_text();
    let back = ResultDocument::parse(&text)?;
    println!("round trip equal: {}", back == verified);
    println!("verification passed: {}", back.verification.map(|v| v.passed).unwrap_or(false));
    Ok(())
}
