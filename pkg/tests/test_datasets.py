import numpy as np
import pytest

from photonic_vqc.datasets import (
    CIRCLE_RADIUS,
    SQUARE_SIDE,
    Dataset,
    DatasetError,
    circle_label,
    generate_circle,
    generate_sine,
    generate_square,
    load_csv,
    load_dataset,
    load_iris,
    save_csv,
    sine_label,
    split,
    square_label,
)

LABELERS = {"square": square_label, "circle": circle_label, "sine": sine_label}
GENERATORS = {"square": generate_square, "circle": generate_circle, "sine": generate_sine}


class TestBoundaryRules:
    def test_square_center_inside(self):
        assert square_label(np.pi / 4, np.pi / 4) == 1

    def test_square_corner_outside(self):
        assert square_label(0.0, 0.0) == 0

    def test_circle_center_inside(self):
        assert circle_label(np.pi / 4, np.pi / 4) == 1

    def test_circle_just_outside_radius(self):
        assert circle_label(np.pi / 4 + CIRCLE_RADIUS + 0.01, np.pi / 4) == 0

    def test_circle_just_inside_radius(self):
        assert circle_label(np.pi / 4 + CIRCLE_RADIUS - 0.01, np.pi / 4) == 1

    def test_sine_above_curve(self):
        assert sine_label(0.0, np.pi / 2) == 1

    def test_sine_below_curve(self):
        assert sine_label(0.0, 0.0) == 0

    def test_sine_on_curve_is_class_zero(self):
        x1 = 0.3
        boundary = np.pi / 4 + (np.pi / 8) * np.sin(8 * x1)
        assert sine_label(x1, boundary) == 0

    def test_circle_covers_half_the_domain(self):
        rng = np.random.default_rng(0)
        pts = rng.uniform(0, np.pi / 2, (100_000, 2))
        frac = circle_label(pts[:, 0], pts[:, 1]).mean()
        se = np.sqrt(0.25 / 100_000)
        assert abs(frac - 0.5) < 3 * se

    def test_square_covers_half_the_domain(self):
        assert SQUARE_SIDE**2 == pytest.approx((np.pi / 2) ** 2 / 2)


class TestGenerators:
    @pytest.mark.parametrize("name", ["square", "circle", "sine"])
    def test_exact_class_counts(self, name):
        ds = GENERATORS[name](37, seed=3)
        assert int(np.sum(ds.y == 0)) == 37
        assert int(np.sum(ds.y == 1)) == 37

    @pytest.mark.parametrize("name", ["square", "circle", "sine"])
    def test_labels_self_consistent(self, name):
        ds = GENERATORS[name](100, seed=4)
        recomputed = LABELERS[name](ds.X[:, 0], ds.X[:, 1])
        np.testing.assert_array_equal(recomputed, ds.y)

    @pytest.mark.parametrize("name", ["square", "circle", "sine"])
    def test_features_inside_domain(self, name):
        ds = GENERATORS[name](100, seed=5)
        assert np.all((ds.X > 0) & (ds.X < np.pi / 2))

    def test_deterministic_under_seed(self):
        a = generate_square(50, seed=9)
        b = generate_square(50, seed=9)
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.y, b.y)

    def test_rejects_zero_per_class(self):
        with pytest.raises(ValueError):
            generate_circle(0, seed=0)


class TestLoadIris:
    def test_canonical_file(self, iris_path):
        ds = load_iris(iris_path)
        assert len(ds) == 150
        assert ds.n_classes == 3 and ds.feature_dim == 4
        for cls in range(3):
            assert int(np.sum(ds.y == cls)) == 50

    def test_first_row(self, iris_path):
        ds = load_iris(iris_path)
        np.testing.assert_allclose(ds.X[0], [5.1, 3.5, 1.4, 0.2])
        assert ds.y[0] == 0

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(DatasetError):
            load_iris(path)

    def test_unknown_class_name(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("5.1,3.5,1.4,0.2,Iris-bogus\n")
        with pytest.raises(DatasetError, match="line 1"):
            load_iris(path)

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("5.1,3.5,1.4,Iris-setosa\n")
        with pytest.raises(DatasetError, match="line 1"):
            load_iris(path)

    def test_header_is_skipped(self, tmp_path):
        path = tmp_path / "with_header.csv"
        path.write_text(
            "sepal_l,sepal_w,petal_l,petal_w,species\n5.1,3.5,1.4,0.2,Iris-setosa\n"
        )
        ds = load_iris(path)
        assert len(ds) == 1


class TestSplit:
    def test_iris_80_20_stratified(self, iris_path):
        ds = load_iris(iris_path)
        train, test = split(ds, 0.8, seed=0, stratified=True)
        assert len(train) == 120 and len(test) == 30
        for cls in range(3):
            assert int(np.sum(train.y == cls)) == 40
            assert int(np.sum(test.y == cls)) == 10

    def test_half_split_of_two(self):
        ds = Dataset(
            X=np.array([[0.1, 0.2], [0.3, 0.4]]),
            y=np.array([0, 0]),
            n_classes=1,
            feature_dim=2,
        )
        train, test = split(ds, 0.5, seed=0)
        assert len(train) == 1 and len(test) == 1

    def test_deterministic(self, iris_path):
        ds = load_iris(iris_path)
        a = split(ds, 0.8, seed=11)
        b = split(ds, 0.8, seed=11)
        np.testing.assert_array_equal(a[0].X, b[0].X)
        np.testing.assert_array_equal(a[1].X, b[1].X)

    def test_partition_no_overlap(self):
        ds = generate_sine(60, seed=2)
        train, test = split(ds, 0.75, seed=3)
        assert len(train) + len(test) == len(ds)
        train_rows = {tuple(r) for r in train.X}
        test_rows = {tuple(r) for r in test.X}
        assert not train_rows & test_rows

    def test_empty_side_rejected(self):
        ds = generate_square(2, seed=0)
        with pytest.raises(DatasetError):
            split(ds, 0.999, seed=0, stratified=False)


class TestCsvRoundTrip:
    def test_save_load(self, tmp_path):
        ds = generate_circle(25, seed=6)
        path = tmp_path / "circle.csv"
        save_csv(path, ds)
        loaded = load_csv(path)
        np.testing.assert_allclose(loaded.X, ds.X)
        np.testing.assert_array_equal(loaded.y, ds.y)
        assert loaded.feature_dim == 2 and loaded.n_classes == 2

    def test_header_format(self, tmp_path):
        ds = generate_square(5, seed=7)
        path = tmp_path / "square.csv"
        save_csv(path, ds)
        assert path.read_text().split("\n")[0] == "x1,x2,label"

    def test_load_dataset_dispatches_to_iris(self, tmp_path, iris_path):
        ds = load_dataset(iris_path)
        assert ds.feature_dim == 4

    def test_load_dataset_generic(self, tmp_path):
        ds = generate_sine(10, seed=8)
        path = tmp_path / "sine.csv"
        save_csv(path, ds)
        assert load_dataset(path).feature_dim == 2

    def test_malformed_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x1,x2,label\n0.1,0.2\n")
        with pytest.raises(DatasetError, match="line 2"):
            load_csv(path)
