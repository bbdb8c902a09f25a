import random

from attrs import evolve
from hypothesis import given
from hypothesis import strategies as st
from pytest import fixture, mark, param, raises

from modules import layout
from modules.directive import (
    Alignment,
    Axis,
    FigureDirective,
    Force,
    SessionConfig,
    Slides,
    Trims,
)
from modules.drivers import STANDARD_HINT, STANDARD_WARNING
from modules.dscparse import BBoxProbe, NaturalDims, ProbeStatus
from modules.texfix import DegenerateDimension, scale_op

PT = 65536
SQUARE = BBoxProbe("0", "0", "100", "100")
SQUARE_SP = 6578176
MISSING = BBoxProbe(status=ProbeStatus.MISSING_FILE)


@fixture
def fig() -> FigureDirective:
    return FigureDirective(file_name="fig.eps", file_spec="fig.eps")


class Test_apply_trims:
    @staticmethod
    def test_identity():
        dims = NaturalDims(SQUARE_SP, SQUARE_SP)
        assert layout.apply_trims(dims, Trims()) == layout.TrimmedDims(
            SQUARE_SP, SQUARE_SP
        )

    @staticmethod
    def test_all_edges():
        trimmed = layout.apply_trims(NaturalDims(SQUARE_SP, SQUARE_SP), Trims(PT, PT, PT, PT))
        assert (trimmed.width, trimmed.height) == (6447104, 6447104)
        assert (trimmed.left, trimmed.bottom) == (PT, PT)
        assert trimmed.warnings == ()

    @staticmethod
    def test_over_trim():
        trimmed = layout.apply_trims(
            NaturalDims(SQUARE_SP, SQUARE_SP),
            Trims(left=SQUARE_SP + PT),
        )
        assert trimmed.width == -PT
        assert trimmed.warnings == ("Trimmed width is not positive (-1.0pt)",)


class Test_resolve_scale:
    @staticmethod
    def test_unforced(fig):
        resolution, real = layout.resolve_scale(fig, SQUARE_SP, SQUARE_SP)
        assert resolution == layout.ScaleResolution(1000 * PT)
        assert real == "1000.0"

    @staticmethod
    def test_force_width(fig):
        fig = evolve(fig, force=Force(3289088, Axis.WIDTH))
        resolution, real = layout.resolve_scale(fig, SQUARE_SP, SQUARE_SP)
        assert resolution.fig_scale == 32766415
        assert real == "499.97581"
        assert abs(resolution.fig_scale - 500 * PT) < PT

    @staticmethod
    def test_force_height_natural(fig):
        fig = evolve(fig, force=Force(SQUARE_SP, Axis.HEIGHT))
        resolution, _ = layout.resolve_scale(fig, SQUARE_SP, SQUARE_SP)
        assert resolution.fig_scale == 65532830
        assert resolution.forced_axis is Axis.HEIGHT

    @staticmethod
    def test_degenerate(fig):
        fig = evolve(fig, force=Force(PT, Axis.WIDTH))
        with raises(DegenerateDimension):
            layout.resolve_scale(fig, 99, SQUARE_SP)


class Test_scale_dims:
    @staticmethod
    @mark.parametrize(
        "fig_scale,expected",
        [
            param(1000 * PT, 6577920, id="natural"),
            param(500 * PT, 3288960, id="half"),
        ],
    )
    def test_scale_dims(fig_scale, expected):
        scaled = layout.scale_dims(
            layout.ScaleResolution(fig_scale),
            layout.TrimmedDims(SQUARE_SP, SQUARE_SP),
        )
        assert (scaled.width, scaled.height) == (expected, expected)

    @staticmethod
    def test_forced_axis_verbatim():
        scaled = layout.scale_dims(
            layout.ScaleResolution(1305760, Axis.WIDTH, 2 * PT),
            layout.TrimmedDims(SQUARE_SP, SQUARE_SP),
        )
        assert (scaled.width, scaled.height) == (131072, 131044)

    @staticmethod
    def test_shift_and_trims_scaled():
        scaled = layout.scale_dims(
            layout.ScaleResolution(500 * PT),
            layout.TrimmedDims(SQUARE_SP, SQUARE_SP, left=2 * PT, bottom=4 * PT),
            (657817, 0),
        )
        assert scaled.left == scale_op(2 * PT, 500 * PT) == 65280
        assert scaled.bottom == scale_op(4 * PT, 500 * PT)
        assert scaled.shift_x == scale_op(657817, 500 * PT)


class Test_ink_anchor:
    @staticmethod
    @mark.parametrize(
        "args,expected",
        [
            param((0, 0, 0, 0, Slides()), (0, 0), id="nothing"),
            param((0, 0, PT, 0, Slides()), (-PT, 0), id="left_trim"),
            param((0, 0, 0, 0, Slides(v=PT)), (0, -PT), id="vslide_down"),
            param((0, 0, 0, 0, Slides(h=PT)), (PT, 0), id="hslide_right"),
            param((656640, 0, 0, PT, Slides()), (656640, -PT), id="origin_shift"),
        ],
    )
    def test_ink_anchor(args, expected):
        assert layout.ink_anchor(*args) == expected


class Test_compose_box:
    @staticmethod
    @mark.parametrize(
        "alignment,expected",
        [
            param(Alignment.CENTER, (491520, 163840), id="center"),
            param(Alignment.TOP, (0, 655360), id="top"),
            param(Alignment.BOTTOM, (655360, 0), id="bottom"),
        ],
    )
    def test_compose_box(alignment, expected):
        box = layout.compose_box(PT, 10 * PT, alignment, 163840)
        assert box.box_width == PT
        assert (box.height_above_baseline, box.depth_below_baseline) == expected

    @staticmethod
    def test_odd_height_remainder_to_depth():
        box = layout.compose_box(0, 7, Alignment.CENTER, 0)
        assert (box.height_above_baseline, box.depth_below_baseline) == (3, 4)


class Test_place:
    @staticmethod
    def test_minimal(fig):
        placement = layout.place(fig, SessionConfig(), SQUARE)
        assert placement.box_width == 6577920
        assert placement.total_height == 6577920
        assert (placement.height_above_baseline, placement.depth_below_baseline) == (
            3452800,
            3125120,
        )
        assert (placement.ink_anchor_x, placement.ink_anchor_y) == (0, 0)
        assert placement.fig_scale_real == "1000.0"
        assert placement.rule_thickness == 26214
        assert placement.show_frames

    @staticmethod
    def test_half_scale(fig):
        placement = layout.place(evolve(fig, scale=500 * PT), SessionConfig(), SQUARE)
        assert (placement.box_width, placement.total_height) == (3288960, 3288960)
        assert placement.fig_scale_real == "500.0"

    @staticmethod
    def test_force_width(fig):
        fig = evolve(fig, force=Force(2 * PT, Axis.WIDTH))
        placement = layout.place(fig, SessionConfig(), SQUARE)
        assert placement.box_width == 131072
        assert placement.total_height == 131044

    @staticmethod
    def test_missing_file_placeholder(fig):
        warnings = ["!!! EPS FILE fig.eps WAS NOT FOUND !!!"]
        found = layout.place(fig, SessionConfig(), SQUARE)
        missing = layout.place(fig, SessionConfig(), MISSING, warnings)
        assert evolve(missing, warnings=()) == found
        assert missing.warnings == tuple(warnings)

    @staticmethod
    def test_ps_origin_driver(fig):
        probe = BBoxProbe("-10", "0", "90", "100")
        placement = layout.place(fig, SessionConfig(driver="rokicki"), probe)
        assert (placement.ink_anchor_x, placement.ink_anchor_y) == (656640, 0)
        unshifted = layout.place(fig, SessionConfig(driver="textures"), probe)
        assert (unshifted.ink_anchor_x, unshifted.ink_anchor_y) == (0, 0)

    @staticmethod
    def test_idempotent(fig):
        fig = evolve(fig, trims=Trims(PT, 2 * PT, 3 * PT, 4 * PT), slides=Slides(PT, PT))
        cfg = SessionConfig(driver="unix_coop")
        assert layout.place(fig, cfg, SQUARE) == layout.place(fig, cfg, SQUARE)

    @staticmethod
    def test_alignment_invariant():
        rng = random.Random(6000)
        for _ in range(1000):
            base = FigureDirective(
                file_name="f.eps",
                file_spec="f.eps",
                scale=rng.randint(10, 2000) * PT,
                trims=Trims(*(rng.randint(-5 * PT, 20 * PT) for _ in range(4))),
                slides=Slides(rng.randint(-PT, PT), rng.randint(-PT, PT)),
                force=rng.choice(
                    [
                        None,
                        Force(rng.randint(PT, 300 * PT), rng.choice([*Axis])),
                    ]
                ),
            )
            placements = {
                alignment: layout.place(
                    evolve(base, alignment=alignment), SessionConfig(), SQUARE
                )
                for alignment in Alignment
            }
            totals = {p.total_height for p in placements.values()}
            assert len(totals) == 1
            assert placements[Alignment.TOP].height_above_baseline == 0
            assert placements[Alignment.BOTTOM].depth_below_baseline == 0

    @staticmethod
    @given(
        st.integers(min_value=PT, max_value=500 * PT),
        st.sampled_from([*Axis]),
    )
    def test_forced_axis_exact(amount, axis):
        fig = FigureDirective("f.eps", "f.eps", force=Force(amount, axis))
        placement = layout.place(fig, SessionConfig(), SQUARE)
        forced = placement.box_width if axis is Axis.WIDTH else placement.total_height
        assert forced == amount

    @staticmethod
    @given(
        st.integers(min_value=1, max_value=1600),
        st.integers(min_value=1, max_value=1600),
    )
    def test_natural_scale_error(urx, ury):
        probe = BBoxProbe("0", "0", str(urx), str(ury))
        fig = FigureDirective("f.eps", "f.eps")
        placement = layout.place(fig, SessionConfig(), probe)
        dims = layout.natural_dims(probe, False)
        assert 0 <= dims.width - placement.box_width < 1280
        assert 0 <= dims.height - placement.total_height < 1280


class Test_figure_session:
    @staticmethod
    def test_persistent_force_carried(fig):
        session = layout.FigureSession(SessionConfig())
        first = session.include(
            evolve(fig, force=Force(2 * PT, Axis.WIDTH, persistent=True)), SQUARE
        )
        second = session.include(fig, SQUARE)
        assert first.placement.box_width == second.placement.box_width == 2 * PT

    @staticmethod
    def test_one_shot_force(fig):
        session = layout.FigureSession(SessionConfig())
        session.include(evolve(fig, force=Force(2 * PT, Axis.WIDTH)), SQUARE)
        assert session.carried_force is None
        assert session.include(fig, SQUARE).placement.box_width == 6577920

    @staticmethod
    def test_release(fig):
        session = layout.FigureSession(SessionConfig())
        session.include(evolve(fig, force=Force(2 * PT, Axis.HEIGHT, persistent=True)), SQUARE)
        released = session.include(evolve(fig, release_force=True), SQUARE)
        assert released.placement.total_height == 6577920
        assert session.carried_force is None

    @staticmethod
    def test_new_force_replaces_carried(fig):
        session = layout.FigureSession(SessionConfig())
        session.include(evolve(fig, force=Force(2 * PT, Axis.WIDTH, persistent=True)), SQUARE)
        result = session.include(evolve(fig, force=Force(3 * PT, Axis.WIDTH)), SQUARE)
        assert result.placement.box_width == 3 * PT
        assert session.carried_force is None
        assert session.include(fig, SQUARE).placement.box_width == 6577920

    @staticmethod
    def test_standard_warning_once(fig):
        session = layout.FigureSession(SessionConfig())
        first = session.include(fig, SQUARE)
        second = session.include(fig, SQUARE)
        assert first.warnings == (STANDARD_WARNING, *STANDARD_HINT)
        assert second.warnings == ()
        assert first.emission.figure_lines == second.emission.figure_lines == ()

    @staticmethod
    def test_emission_uses_placement(fig):
        session = layout.FigureSession(SessionConfig(driver="unix_coop"))
        result = session.include(evolve(fig, scale=500 * PT), SQUARE)
        assert result.emission.figure_lines == ("psfile=fig.eps hscale=0.5 vscale=0.5",)
        assert result.emission.ps_origin

    @staticmethod
    def test_clark_uses_untrimmed(fig):
        session = layout.FigureSession(SessionConfig(driver="clark"))
        result = session.include(evolve(fig, trims=Trims(10 * PT, 10 * PT, 10 * PT, 10 * PT)), SQUARE)
        assert result.emission.figure_lines == (
            "dvitops: import fig.eps 100.34933pt 100.34933pt",
        )
