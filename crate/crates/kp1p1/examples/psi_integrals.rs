//! Psi-class intersection numbers with a persisted cache.

use kp1p1::graphsum::PsiCache;

fn main() -> kp1p1::Result<()> {
    let path = std::env::temp_dir().join("kp1p1-example-psi.txt");
    let cache = PsiCache::load(&path)?;
    for (g, a) in [(0, vec![0, 0, 0]), (1, vec![1]), (2, vec![4]), (2, vec![2, 3]), (3, vec![7])] {
        println!("<tau {a:?}>_{g} = {}", cache.integral(g, &a)?);
    }
    assert!(cache.cross_check().is_empty() && cache.string_dilaton_violations().is_empty());
    cache.save(&path)?;
    println!("{} entries cached in {}", cache.len(), path.display());
    Ok(())
}
