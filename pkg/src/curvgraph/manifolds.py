"""Constant-curvature spaces and the oblate spheroid.

Each manifold provides uniform sampling with respect to its area/volume
measure, exact geodesic distance, and (for the sphere and the spheroid)
the direct geodesic problem.  Points are plain numpy arrays:

* spheres: embedding coordinates with norm equal to the radius
  (3 components for the 2-sphere, 4 for the 3-sphere),
* hyperbolic disk: polar coordinates ``(r, theta)`` about the disk center,
* Euclidean disk: Cartesian ``(x, y)``,
* spheroid: geodetic ``(latitude, longitude)`` in radians.

All operations are pure functions of their inputs plus an explicit random
generator, so they are safe to use from concurrent workers that own their
own generators.
"""

import math

import numpy as np

from .errors import SamplingFailure, SpheroidNonConvergence, UnsupportedManifold

_REJECTION_CAP = 10**6


class Manifold:
    """Common interface; see the concrete classes for coordinate conventions."""

    kind = None

    def sample_points(self, n, rng):
        """Draw ``n`` points uniformly w.r.t. the area/volume measure."""
        raise NotImplementedError

    def sample_point(self, rng):
        return self.sample_points(1, rng)[0]

    def distance(self, p, q):
        """Geodesic distance between two points."""
        return float(self.distances_from(p, np.asarray(q)[None, :])[0])

    def distances_from(self, p, qs):
        """Geodesic distances from one point to each row of ``qs``."""
        raise NotImplementedError

    def diameter(self):
        """Upper bound on the distance between any two points."""
        raise NotImplementedError

    def direct(self, p, azimuth, s):
        """Point reached by following the geodesic from ``p`` for arclength ``s``.

        The azimuth is measured clockwise from north.  Only the 2-sphere and
        the spheroid support this; no other caller needs it.
        """
        raise UnsupportedManifold(f"direct geodesic not supported on {self.kind}")

    def to_json(self):
        raise NotImplementedError


def _check_positive(**lengths):
    for name, value in lengths.items():
        if not value > 0:
            raise ValueError(f"{name} must be strictly positive, got {value}")


class _EmbeddedSphere(Manifold):
    """Round sphere represented by embedding coordinates (chart-free)."""

    dim_embed = None

    def __init__(self, radius):
        _check_positive(radius=radius)
        self.radius = float(radius)

    def sample_points(self, n, rng):
        v = rng.normal(size=(n, self.dim_embed))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        return v * self.radius

    def distances_from(self, p, qs):
        r = self.radius
        cosang = np.clip(qs @ (np.asarray(p) / (r * r)), -1.0, 1.0)
        return r * np.arccos(cosang)

    def diameter(self):
        return math.pi * self.radius

    def to_json(self):
        return {"type": self.kind, "radius": self.radius}

    def __repr__(self):
        return f"{type(self).__name__}(radius={self.radius})"


class Sphere2(_EmbeddedSphere):
    kind = "sphere2"
    dim_embed = 3

    def direct(self, p, azimuth, s):
        r = self.radius
        x, y, z = np.asarray(p) / r
        lat1, lon1 = math.asin(max(-1.0, min(1.0, z))), math.atan2(y, x)
        delta = s / r
        sin_lat2 = math.sin(lat1) * math.cos(delta) + math.cos(lat1) * math.sin(delta) * math.cos(azimuth)
        lat2 = math.asin(max(-1.0, min(1.0, sin_lat2)))
        lon2 = lon1 + math.atan2(
            math.sin(azimuth) * math.sin(delta) * math.cos(lat1),
            math.cos(delta) - math.sin(lat1) * sin_lat2,
        )
        return r * np.array(
            [math.cos(lat2) * math.cos(lon2), math.cos(lat2) * math.sin(lon2), math.sin(lat2)]
        )


class Sphere3(_EmbeddedSphere):
    kind = "sphere3"
    dim_embed = 4


class HyperbolicDisk(Manifold):
    """Geodesic disk in the hyperbolic plane of curvature -1/k^2.

    ``disk_radius`` is the hyperbolic radius of the sampled region.
    """

    kind = "hyperbolic"

    def __init__(self, curvature_scale, disk_radius):
        _check_positive(curvature_scale=curvature_scale, disk_radius=disk_radius)
        self.curvature_scale = float(curvature_scale)
        self.disk_radius = float(disk_radius)

    def sample_points(self, n, rng):
        k, R = self.curvature_scale, self.disk_radius
        # radial density ~ sinh(r/k): invert the CDF (cosh(r/k)-1)/(cosh(R/k)-1)
        u = rng.random(n)
        r = k * np.arccosh(1.0 + u * (math.cosh(R / k) - 1.0))
        theta = rng.random(n) * (2.0 * math.pi)
        return np.column_stack([r, theta])

    def distances_from(self, p, qs):
        k = self.curvature_scale
        r1, t1 = float(p[0]), float(p[1])
        r2, t2 = qs[:, 0] / k, qs[:, 1]
        arg = math.cosh(r1 / k) * np.cosh(r2) - math.sinh(r1 / k) * np.sinh(r2) * np.cos(t1 - t2)
        return k * np.arccosh(np.maximum(arg, 1.0))

    def diameter(self):
        return 2.0 * self.disk_radius

    def to_json(self):
        return {
            "type": self.kind,
            "curvature_scale": self.curvature_scale,
            "disk_radius": self.disk_radius,
        }

    def __repr__(self):
        return f"HyperbolicDisk(curvature_scale={self.curvature_scale}, disk_radius={self.disk_radius})"


class EuclideanDisk(Manifold):
    kind = "euclidean"

    def __init__(self, radius):
        _check_positive(radius=radius)
        self.radius = float(radius)

    def sample_points(self, n, rng):
        r = self.radius * np.sqrt(rng.random(n))
        theta = rng.random(n) * (2.0 * math.pi)
        return np.column_stack([r * np.cos(theta), r * np.sin(theta)])

    def distances_from(self, p, qs):
        return np.linalg.norm(qs - np.asarray(p), axis=1)

    def diameter(self):
        return 2.0 * self.radius

    def to_json(self):
        return {"type": self.kind, "radius": self.radius}

    def __repr__(self):
        return f"EuclideanDisk(radius={self.radius})"


class Spheroid(Manifold):
    """Oblate ellipsoid of revolution, lengths in kilometers by convention.

    Geodesics use the classical iterative inverse/direct method (reduced
    latitudes, iterated longitude difference, series in the flattening),
    converging to 1e-12 on the longitude-difference variable within 200
    iterations.  Near-antipodal inverse problems may fail to converge and
    raise :class:`SpheroidNonConvergence`; callers reject such pairs.
    """

    kind = "spheroid"
    _MAX_ITER = 200
    _TOL = 1e-12

    def __init__(self, equatorial_radius, polar_radius):
        _check_positive(equatorial_radius=equatorial_radius, polar_radius=polar_radius)
        if polar_radius > equatorial_radius:
            raise ValueError("spheroid must be oblate: polar_radius <= equatorial_radius")
        self.equatorial_radius = float(equatorial_radius)
        self.polar_radius = float(polar_radius)

    @property
    def flattening(self):
        return (self.equatorial_radius - self.polar_radius) / self.equatorial_radius

    @property
    def eccentricity_sq(self):
        b_over_a = self.polar_radius / self.equatorial_radius
        return 1.0 - b_over_a * b_over_a

    def sample_points(self, n, rng):
        # Rejection against the surface-area element in geodetic latitude,
        # dA ~ cos(lat) / (1 - e^2 sin^2 lat)^2, with the always-valid
        # envelope 1/(1-e^2)^2.
        e2 = self.eccentricity_sq
        envelope = 1.0 / (1.0 - e2) ** 2
        out = np.empty((n, 2))
        filled = 0
        attempts = 0
        while filled < n:
            batch = max(64, 2 * (n - filled))
            attempts += batch
            if attempts > _REJECTION_CAP + batch:
                raise SamplingFailure("spheroid rejection sampling exceeded attempt cap")
            lat = rng.uniform(-math.pi / 2, math.pi / 2, size=batch)
            lon = rng.uniform(0.0, 2.0 * math.pi, size=batch)
            dens = np.cos(lat) / (1.0 - e2 * np.sin(lat) ** 2) ** 2
            keep = rng.uniform(0.0, envelope, size=batch) <= dens
            take = min(int(keep.sum()), n - filled)
            sel = np.nonzero(keep)[0][:take]
            out[filled : filled + take, 0] = lat[sel]
            out[filled : filled + take, 1] = lon[sel]
            filled += take
        return out

    def distance(self, p, q):
        a, b = self.equatorial_radius, self.polar_radius
        f = self.flattening
        lat1, lon1 = float(p[0]), float(p[1])
        lat2, lon2 = float(q[0]), float(q[1])
        if lat1 == lat2 and (lon1 - lon2) % (2.0 * math.pi) == 0.0:
            return 0.0
        U1 = math.atan((1.0 - f) * math.tan(lat1))
        U2 = math.atan((1.0 - f) * math.tan(lat2))
        L = lon2 - lon1
        sinU1, cosU1 = math.sin(U1), math.cos(U1)
        sinU2, cosU2 = math.sin(U2), math.cos(U2)
        lam = L
        for _ in range(self._MAX_ITER):
            sin_lam, cos_lam = math.sin(lam), math.cos(lam)
            sin_sig = math.hypot(cosU2 * sin_lam, cosU1 * sinU2 - sinU1 * cosU2 * cos_lam)
            if sin_sig == 0.0:
                return 0.0  # coincident
            cos_sig = sinU1 * sinU2 + cosU1 * cosU2 * cos_lam
            sig = math.atan2(sin_sig, cos_sig)
            sin_alp = cosU1 * cosU2 * sin_lam / sin_sig
            cos2_alp = 1.0 - sin_alp * sin_alp
            # equatorial geodesic: cos2_alp == 0
            cos_2sigm = cos_sig - 2.0 * sinU1 * sinU2 / cos2_alp if cos2_alp != 0.0 else 0.0
            C = f / 16.0 * cos2_alp * (4.0 + f * (4.0 - 3.0 * cos2_alp))
            lam_prev = lam
            lam = L + (1.0 - C) * f * sin_alp * (
                sig + C * sin_sig * (cos_2sigm + C * cos_sig * (-1.0 + 2.0 * cos_2sigm**2))
            )
            if abs(lam - lam_prev) < self._TOL:
                break
        else:
            raise SpheroidNonConvergence("inverse geodesic did not converge (near-antipodal pair?)")
        u2 = cos2_alp * (a * a - b * b) / (b * b)
        A = 1.0 + u2 / 16384.0 * (4096.0 + u2 * (-768.0 + u2 * (320.0 - 175.0 * u2)))
        B = u2 / 1024.0 * (256.0 + u2 * (-128.0 + u2 * (74.0 - 47.0 * u2)))
        d_sig = B * sin_sig * (
            cos_2sigm
            + B / 4.0 * (
                cos_sig * (-1.0 + 2.0 * cos_2sigm**2)
                - B / 6.0 * cos_2sigm * (-3.0 + 4.0 * sin_sig**2) * (-3.0 + 4.0 * cos_2sigm**2)
            )
        )
        return b * A * (sig - d_sig)

    def distances_from(self, p, qs):
        return np.array([self.distance(p, q) for q in qs])

    def direct(self, p, azimuth, s):
        a, b = self.equatorial_radius, self.polar_radius
        f = self.flattening
        lat1, lon1 = float(p[0]), float(p[1])
        tanU1 = (1.0 - f) * math.tan(lat1)
        U1 = math.atan(tanU1)
        sig1 = math.atan2(tanU1, math.cos(azimuth))
        sin_alp = math.cos(U1) * math.sin(azimuth)
        cos2_alp = 1.0 - sin_alp * sin_alp
        u2 = cos2_alp * (a * a - b * b) / (b * b)
        A = 1.0 + u2 / 16384.0 * (4096.0 + u2 * (-768.0 + u2 * (320.0 - 175.0 * u2)))
        B = u2 / 1024.0 * (256.0 + u2 * (-128.0 + u2 * (74.0 - 47.0 * u2)))
        sig = s / (b * A)
        sig_2m = 0.0
        for _ in range(self._MAX_ITER):
            sig_2m = 2.0 * sig1 + sig
            d_sig = B * math.sin(sig) * (
                math.cos(sig_2m)
                + B / 4.0 * (
                    math.cos(sig) * (-1.0 + 2.0 * math.cos(sig_2m) ** 2)
                    - B / 6.0 * math.cos(sig_2m)
                    * (-3.0 + 4.0 * math.sin(sig) ** 2)
                    * (-3.0 + 4.0 * math.cos(sig_2m) ** 2)
                )
            )
            sig_prev = sig
            sig = s / (b * A) + d_sig
            if abs(sig - sig_prev) < self._TOL:
                break
        else:
            raise SpheroidNonConvergence("direct geodesic did not converge")
        sinU1, cosU1 = math.sin(U1), math.cos(U1)
        sin_sig, cos_sig = math.sin(sig), math.cos(sig)
        cos_az = math.cos(azimuth)
        lat2 = math.atan2(
            sinU1 * cos_sig + cosU1 * sin_sig * cos_az,
            (1.0 - f) * math.hypot(sin_alp, sinU1 * sin_sig - cosU1 * cos_sig * cos_az),
        )
        lam = math.atan2(sin_sig * math.sin(azimuth), cosU1 * cos_sig - sinU1 * sin_sig * cos_az)
        C = f / 16.0 * cos2_alp * (4.0 + f * (4.0 - 3.0 * cos2_alp))
        L = lam - (1.0 - C) * f * sin_alp * (
            sig + C * sin_sig * (math.cos(sig_2m) + C * cos_sig * (-1.0 + 2.0 * math.cos(sig_2m) ** 2))
        )
        return np.array([lat2, lon1 + L])

    def diameter(self):
        return math.pi * self.equatorial_radius

    def to_json(self):
        return {
            "type": self.kind,
            "equatorial_radius": self.equatorial_radius,
            "polar_radius": self.polar_radius,
        }

    def __repr__(self):
        return f"Spheroid({self.equatorial_radius}, {self.polar_radius})"


_KINDS = {
    "sphere2": lambda o: Sphere2(o["radius"]),
    "sphere3": lambda o: Sphere3(o["radius"]),
    "hyperbolic": lambda o: HyperbolicDisk(o["curvature_scale"], o["disk_radius"]),
    "euclidean": lambda o: EuclideanDisk(o["radius"]),
    "spheroid": lambda o: Spheroid(o["equatorial_radius"], o["polar_radius"]),
}


def manifold_from_json(obj):
    """Build a manifold from its JSON object form (see each ``to_json``)."""
    try:
        factory = _KINDS[obj["type"]]
    except KeyError as exc:
        raise ValueError(f"unknown manifold type: {obj.get('type')!r}") from exc
    return factory(obj)


def sample_point(manifold, rng):
    """Uniform point w.r.t. the manifold's volume measure."""
    return manifold.sample_point(rng)


def geodesic_distance(manifold, p, q):
    """Exact geodesic distance between two points on the manifold."""
    return manifold.distance(p, q)


def geodesic_direct(manifold, p, azimuth, s):
    """Solve the direct geodesic problem (2-sphere and spheroid only)."""
    return manifold.direct(p, azimuth, s)
