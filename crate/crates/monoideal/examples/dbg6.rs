fn main() {
    use monoideal::groebner::{buchberger, Limits};
    use monoideal::ideal::MonomialIdeal;
    use monoideal::poly::TermOrder;
    use monoideal::rees::{
        jacobian_dual, jacobian_quadrics, linear_forms, rees_ideal, ReesRoute,
    };
    let lim = Limits::default();
    // the boundary tuples where the two implemented routes say "expected"
    // but not all b_i coincide, plus control cases
    for (bs, label) in [
        (vec![1u64, 1, 2], "n=4 b=(1,1,2)"),
        (vec![1, 1, 1, 2], "n=5 b=(1,1,1,2)"),
        (vec![2, 2, 4], "n=4 b=(2,2,4)"),
        (vec![1, 3, 6], "n=4 b=(1,3,6) control (paper: not expected)"),
        (vec![1, 1, 1], "n=4 b=(1,1,1) control (expected)"),
    ] {
        let mut product = MonomialIdeal::unit(2);
        for &b in &bs {
            product = product
                .multiply(&MonomialIdeal::from_pairs(&[(1, 0), (0, b)]).unwrap())
                .unwrap();
        }
        let s = product.to_staircase().unwrap();
        let q = rees_ideal(&s, ReesRoute::Elimination, &lim).unwrap();
        let mut gens = linear_forms(&s);
        gens.extend(jacobian_quadrics(&jacobian_dual(&s).unwrap()));
        let expected_ideal = buchberger(&gens, TermOrder::DegRevLex, &lim).unwrap();
        println!("{label}: Q == (Q1, I2(B)) ? {}", q == expected_ideal);
    }
}
