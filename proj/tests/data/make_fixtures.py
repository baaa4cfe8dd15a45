"""Regenerates the synthetic measurement fixtures in this directory.

All fixtures follow the dense-QP layout: QPs 22..37 per codec and sequence,
with QPs 22/27/32/37 flagged as supporting points.
"""
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
QPS = range(22, 38)
SUPPORT = {22, 27, 32, 37}
HEADER = "sequence,codec,label,quality_metric,quality,cost_metric,cost,support\n"


def softplus(z):
    return math.log1p(math.exp(z))


def write(name, rows):
    with open(os.path.join(HERE, name), "w", newline="\n") as f:
        f.write(HEADER)
        for r in rows:
            f.write(",".join(str(v) for v in r) + "\n")


def knee_rows():
    # SSIM saturates at low QP while the rate keeps doubling: flat-then-steep
    # when log-rate is read as a function of SSIM.
    params = {
        "HM": (0.9930, 0.0022, 27.0, 1.2, 21000.0, 4.6),
        "VTM": (0.9945, 0.0019, 26.0, 1.0, 15500.0, 4.4),
    }
    rows = []
    for codec, (smax, c, q0, w, r0, halve) in params.items():
        for qp in QPS:
            ssim = smax - c * w * softplus((qp - q0) / w) - 0.00008 * (qp - 22)
            rate = r0 * 2 ** (-(qp - 22) / halve)
            rows.append(("Cactus", codec, qp, "SSIM", f"{ssim:.6f}", "bitrate_kbps",
                         f"{rate:.1f}", int(qp in SUPPORT)))
    return rows


def psnr_rows(sequences):
    rows = []
    for seq, (p0, slope, r0) in sequences.items():
        for codec, gain, shrink in (("HM", 0.0, 1.0), ("VTM", 0.35, 0.74)):
            for qp in QPS:
                d = qp - 22
                psnr = p0 + gain - slope * d - 0.0035 * d * d
                rate = r0 * shrink * 2 ** (-d / 5.3) * (1.0 + 0.004 * math.sin(1.7 * qp))
                rows.append((seq, codec, qp, "PSNR", f"{psnr:.4f}", "bitrate_kbps",
                             f"{rate:.2f}", int(qp in SUPPORT)))
    return rows


def main():
    write("knee_ssim.csv", knee_rows())
    write("two_codec.csv", psnr_rows({
        "BQSquare": (41.2, 0.47, 3100.0),
        "Cactus": (40.1, 0.36, 26000.0),
        "FourPeople": (44.0, 0.41, 5200.0),
    }))
    # second sequence has disjoint PSNR spans between the codecs
    rows = psnr_rows({"Cactus": (40.1, 0.36, 26000.0)})
    for qp in QPS:
        d = qp - 22
        for codec, base in (("HM", 33.0), ("VTM", 40.5)):
            psnr = base - 0.2 * d
            rate = 900.0 * 2 ** (-d / 5.0)
            rows.append(("SlideEditing", codec, qp, "PSNR", f"{psnr:.4f}", "bitrate_kbps",
                         f"{rate:.2f}", int(qp in SUPPORT)))
    write("disjoint.csv", rows)


if __name__ == "__main__":
    main()
