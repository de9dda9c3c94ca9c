use germkit::poly::parse;
use germkit::cone::tangent_lines;
fn main() {
    let f = parse("y^2 - x^2", &["x", "y"]).unwrap();
    for l in tangent_lines(&f).unwrap() {
        println!("{:?} x{}", l.direction, l.cone_multiplicity);
    }
    let w = parse("x*y*(y-x)*(y-2*x)", &["x", "y"]).unwrap();
    for l in tangent_lines(&w).unwrap() {
        println!("{:?} x{}", l.direction, l.cone_multiplicity);
    }
}
