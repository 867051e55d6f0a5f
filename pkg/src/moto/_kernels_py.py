"""Pure-numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def chain_fk(root, axes, lengths, q):
    n = q.shape[0]
    out = np.empty((n + 1, 4, 4))
    out[0] = root
    for i in range(n):
        kx, ky, kz = axes[i]
        ct, st = np.cos(q[i]), np.sin(q[i])
        vt = 1.0 - ct
        R = np.array(
            [
                [ct + kx * kx * vt, kx * ky * vt - kz * st, kx * kz * vt + ky * st],
                [ky * kx * vt + kz * st, ct + ky * ky * vt, ky * kz * vt - kx * st],
                [kz * kx * vt - ky * st, kz * ky * vt + kx * st, ct + kz * kz * vt],
            ]
        )
        out[i + 1, :3, :3] = out[i, :3, :3] @ R
        out[i + 1, :3, 3] = out[i, :3, 3] + lengths[i] * out[i + 1, :3, 0]
        out[i + 1, 3] = (0.0, 0.0, 0.0, 1.0)
    return out


def vote_counts(cloud, voters, tau):
    diff = cloud[:, None, :] - voters[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    return np.count_nonzero(dist < tau, axis=1).astype(np.int64)


def hinge_sum(d, eps):
    v = eps - d
    return float(np.sum(v[v > 0.0]))
