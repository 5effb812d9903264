use corings::algebra::Algebra;
use corings::bimodule::Bimodule;
use corings::coring::*;
use corings::endo::EndoRing;
use corings::field::{Field, Scalar};
use corings::matrix::Matrix;
use corings::subspace::{QuotientSpace, Subspace};
use std::time::Instant;

fn main() {
    let f2 = Field::prime(2).unwrap();
    let sigma = Bimodule::free(&Algebra::ground(f2), 2);
    let endo = EndoRing::new(&sigma).unwrap();
    let sw = SweedlerCoring::of_endo_ring(&endo).unwrap();
    let c = &sw.coring;
    let left = &c.square.module;
    let right = &c.module;
    let ring = &left.right;
    let ambient = left.dim * right.dim;
    let t = Instant::now();
    let mut relations: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..ring.dim {
        for i in 0..left.dim {
            let xr = left.right_action[r].apply(&left.basis_element(i));
            for j in 0..right.dim {
                let ry = right.left_action[r].apply(&right.basis_element(j));
                let mut rel = vec![f2.zero(); ambient];
                for (k, cc) in xr.iter().enumerate() {
                    if !cc.is_zero() { rel[k * right.dim + j] = rel[k * right.dim + j].add(cc); }
                }
                for (l, cc) in ry.iter().enumerate() {
                    if !cc.is_zero() { rel[i * right.dim + l] = rel[i * right.dim + l].sub(cc); }
                }
                relations.push(rel);
            }
        }
    }
    println!("relations build: {:?} ({} rows x {})", t.elapsed(), relations.len(), ambient);
    let t = Instant::now();
    let kernel = Subspace::from_span(f2, ambient, &relations);
    println!("from_span: {:?} rank {}", t.elapsed(), kernel.dim());
    let t = Instant::now();
    let space = QuotientSpace::new(ambient, kernel);
    println!("quotient: {:?} dim {}", t.elapsed(), space.dim);
    let t = Instant::now();
    let id_right = Matrix::identity(f2, right.dim);
    for idx in 0..left.left.dim {
        let op = left.left_action[idx].kronecker(&id_right);
        let _ = corings::tensor::induce_endo(&space, &op, "x").unwrap();
    }
    println!("left actions induce: {:?}", t.elapsed());
    let t = Instant::now();
    let id_left = Matrix::identity(f2, left.dim);
    let mut ra = Vec::new();
    for idx in 0..right.right.dim {
        let op = id_left.kronecker(&right.right_action[idx]);
        ra.push(corings::tensor::induce_endo(&space, &op, "x").unwrap());
    }
    println!("right actions induce: {:?}", t.elapsed());
    let t = Instant::now();
    let mut la = Vec::new();
    for idx in 0..left.left.dim {
        let op = left.left_action[idx].kronecker(&id_right);
        la.push(corings::tensor::induce_endo(&space, &op, "x").unwrap());
    }
    let module = Bimodule::new(left.left.clone(), right.right.clone(), space.dim, la, ra);
    println!("bimodule new+validate: {:?} ok={}", t.elapsed(), module.is_ok());
}
