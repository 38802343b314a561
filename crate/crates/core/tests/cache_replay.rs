use truncgal::factor::factorization_count;
use truncgal::repro::{emit, reproduce, verify_cache_entry, verify_report, Cache, Format, TableId};

#[test]
fn second_run_is_served_from_cache() {
    let dir = std::env::temp_dir().join(format!("truncgal-replay-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);

    let first = {
        let cache = Cache::at(&dir).unwrap();
        let r = reproduce(TableId::InvsqrtTrunc, 2000, &cache);
        assert!(r.passed());
        assert!(cache.misses() > 0);
        r
    };
    let before = factorization_count();
    let cache = Cache::at(&dir).unwrap();
    let second = reproduce(TableId::InvsqrtTrunc, 2000, &cache);
    assert_eq!(factorization_count(), before, "replay factored again");
    assert_eq!(cache.misses(), 0);
    assert_eq!(cache.hits(), cache.entries().len() as u64);

    for f in [Format::Json, Format::Csv, Format::Text] {
        assert_eq!(emit(&first, f).unwrap(), emit(&second, f).unwrap());
    }
    assert!(verify_report(&second).is_empty());
    let (_, same) = verify_cache_entry(&cache, 3).unwrap().unwrap();
    assert!(same);
    std::fs::remove_dir_all(dir).unwrap();
}
