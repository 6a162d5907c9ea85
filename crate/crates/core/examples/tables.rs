//! Regenerates the three tables and the overhead comparison.

use pentagon_loss::code::build_pentagon_code;
use pentagon_loss::report::{comparison, table1, table2, table3, OVERHEAD_EPSILON};
use pentagon_loss::strategy::NonpreRecurrence;

fn main() -> pentagon_loss::Result<()> {
    let rec = NonpreRecurrence::build(&build_pentagon_code()?)?;
    for t in [table1()?, table2()?, table3(&rec)?] {
        println!("{}", t.to_text());
    }
    let cmp = comparison(&rec, &[0.05, 0.1, 0.2, 0.3, 0.4], OVERHEAD_EPSILON)?;
    print!("{}", cmp.to_csv());
    Ok(())
}
