use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polymat-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymat"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    run(dir, args).status.code().unwrap()
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    std::fs::write(dir.join("bad.pm"), "polymat 1\np 97\ndims 1 1\ne 0 0 5 0\n").unwrap();
    std::fs::write(
        dir.join("three.pm"),
        "polymat 1\np 97\ndims 3 3\ne 0 0 1\ne 1 1 1\ne 2 2 1\n",
    )
    .unwrap();
    std::fs::write(
        dir.join("sing.pm"),
        "polymat 1\np 97\ndims 2 2\ne 0 0 1\ne 0 1 1\ne 1 0 1\ne 1 1 1\n",
    )
    .unwrap();

    let out = run(&dir, &["det", "bad.pm"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4, column 9"));
    assert_eq!(code(&dir, &["det", "missing.pm"]), 4);
    assert_eq!(code(&dir, &["inverse", "three.pm"]), 3);
    assert_eq!(code(&dir, &["--prime", "101", "det", "three.pm"]), 3);
    assert_eq!(code(&dir, &["inverse", "sing.pm"]), 3);
    assert_eq!(code(&dir, &["det", "three.pm"]), 3);
    assert_eq!(code(&dir, &["expand", "sing.pm", "--h", "3", "--delta", "2"]), 3);
    assert_eq!(code(&dir, &["bench", "--op", "sort", "--grid", "2"]), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn outputs_parse_and_round_trip() {
    let dir = scratch("files");
    assert_eq!(
        code(
            &dir,
            &["--prime", "97", "rand", "--n", "2", "--m", "2", "--d", "1", "-o", "a.pm"]
        ),
        0
    );
    assert_eq!(code(&dir, &["inverse", "a.pm", "-o", "u.pm", "-O", "b.pm"]), 0);
    let a = polymat::format::read_file(&dir.join("a.pm")).unwrap();
    let u = polymat::format::read_file(&dir.join("u.pm")).unwrap();
    let b = polymat::format::read_file(&dir.join("b.pm")).unwrap();
    assert_eq!(a.field().modulus(), 97);
    assert_eq!(u.mul(&a).unwrap(), b);

    let out = run(&dir, &["mul", "a.pm", "u.pm"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(polymat::format::parse(&text).unwrap(), a.mul(&u).unwrap());

    let out = run(
        &dir,
        &["bench", "--op", "mul", "--grid", "2,4", "--reps", "1", "--records"],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.starts_with("op=mul n=")));
    std::fs::remove_dir_all(&dir).unwrap();
}
