#!/usr/bin/env python3
"""Fetch MNIST through the npm registry and write the desk-scale subset.

The npm package ``mnist-data`` redistributes the original IDX files. This
script writes, as gzipped IDX in the standard MNIST layout:

  <out>/train-*-ubyte.gz   first N training samples (default 10,000)
  <out>/t10k-*-ubyte.gz    the full 10,000-sample test set

Pass ``--full DIR`` to additionally store the complete 60k training set.
"""
import argparse
import gzip
import pathlib
import struct
import subprocess
import tarfile
import tempfile

PACKAGE = "mnist-data@1.2.6"


def read_member(tf, name):
    return tf.extractfile(f"package/data/{name}").read()


def subset_images(raw: bytes, n: int) -> bytes:
    magic, count, rows, cols = struct.unpack(">IIII", raw[:16])
    assert magic == 0x803 and n <= count
    return struct.pack(">IIII", magic, n, rows, cols) + raw[16:16 + n * rows * cols]


def subset_labels(raw: bytes, n: int) -> bytes:
    magic, count = struct.unpack(">II", raw[:8])
    assert magic == 0x801 and n <= count
    return struct.pack(">II", magic, n) + raw[8:8 + n]


def write_gz(path: pathlib.Path, payload: bytes):
    # mtime=0 keeps the archives byte-reproducible
    with gzip.GzipFile(path, "wb", mtime=0) as f:
        f.write(payload)


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(root / "data" / "mnist"))
    ap.add_argument("--train-count", type=int, default=10000)
    ap.add_argument("--full", default=None, help="also write the full training set here")
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(["npm", "pack", PACKAGE], cwd=tmp, check=True,
                       stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
        tgz = next(pathlib.Path(tmp).glob("mnist-data-*.tgz"))
        with tarfile.open(tgz) as tf:
            train_img = read_member(tf, "train-images-idx3-ubyte")
            train_lab = read_member(tf, "train-labels-idx1-ubyte")
            test_img = read_member(tf, "t10k-images-idx3-ubyte")
            test_lab = read_member(tf, "t10k-labels-idx1-ubyte")

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = args.train_count
    write_gz(out / "train-images-idx3-ubyte.gz", subset_images(train_img, n))
    write_gz(out / "train-labels-idx1-ubyte.gz", subset_labels(train_lab, n))
    write_gz(out / "t10k-images-idx3-ubyte.gz", test_img)
    write_gz(out / "t10k-labels-idx1-ubyte.gz", test_lab)
    print(f"wrote {n} training / 10000 test samples to {out}")

    if args.full:
        full = pathlib.Path(args.full)
        full.mkdir(parents=True, exist_ok=True)
        for name, payload in [("train-images-idx3-ubyte", train_img),
                              ("train-labels-idx1-ubyte", train_lab),
                              ("t10k-images-idx3-ubyte", test_img),
                              ("t10k-labels-idx1-ubyte", test_lab)]:
            write_gz(full / f"{name}.gz", payload)
        print(f"wrote full MNIST to {full}")


if __name__ == "__main__":
    main()
