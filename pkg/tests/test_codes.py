"""测试码构造、逻辑算符、Tanner 报告与码距."""

import pytest

from gaugewise.codes import (
    CssCode,
    RowSpace,
    StabilizerCode,
    bb_logical,
    code_state,
    css_from_dense,
    distance_exact,
    distance_upper,
    double_gross_code,
    format_monomial,
    four_two_two,
    gross_code,
    logical_basis,
    parse_monomial,
    repetition_code,
    rotated_surface_code,
    surface_logicals,
    tanner_report,
)
from gaugewise.config import Settings
from gaugewise.errors import BudgetExceededError, CommutationError, InvalidInputError
from gaugewise.gauging import GaugingPlan, deform
from gaugewise.pauli import PauliOp
from gaugewise.presets import preset_recipe


def _five_qubit_code() -> StabilizerCode:
    words = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return StabilizerCode(5, [PauliOp.from_string(w) for w in words], name="[[5,1,3]]")


class TestMonomials:
    """测试单项式解析."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("1", (0, 0)), ("x", (1, 0)), ("y", (0, 1)), ("x^5y^3", (5, 3)), ("x^{5}y^{3}", (5, 3)), ("y^{2}", (0, 2))],
    )
    def test_parse(self, text: str, expected: tuple[int, int]) -> None:
        """常见写法都能解析."""
        assert parse_monomial(text) == expected

    @pytest.mark.parametrize("text", ["", "z", "x^-1", "yx"])
    def test_parse_rejects(self, text: str) -> None:
        """非法单项式被拒绝."""
        with pytest.raises(InvalidInputError):
            parse_monomial(text)

    def test_format(self) -> None:
        """格式化与解析互逆."""
        assert format_monomial((0, 0)) == "1"
        assert format_monomial((1, 0)) == "x"
        assert format_monomial((5, 3)) == "x^5y^3"
        assert parse_monomial(format_monomial((7, 11))) == (7, 11)


class TestBBCode:
    """测试 BB 码与多项式表逻辑算符."""

    def test_gross_parameters(self) -> None:
        """gross 码为 [[144,12]]，每个检查权重 6."""
        code = gross_code()
        assert code.n == 144
        assert code.k == 12
        report = tanner_report(code)
        assert report.x_weights == {6: 72}
        assert report.z_weights == {6: 72}
        assert report.qubit_degrees == {6: 144}

    def test_double_gross_parameters(self) -> None:
        """double gross 码为 [[288,12]]."""
        code = double_gross_code()
        assert code.n == 288
        assert code.k == 12

    def test_check_labels(self) -> None:
        """检查标签按单项式命名."""
        code = gross_code()
        assert code.labels[0] == "X[1]"
        assert "Z[x^3y^2]" in code.z_labels

    def test_gross_logicals(self) -> None:
        """X̄_1 与 Z̄_1 都是权重 12 的逻辑算符."""
        code = gross_code()
        x = bb_logical(code, (0, 0), "X")
        z = bb_logical(code, (0, 0), "Z")
        assert x.weight == 12
        assert z.weight == 12
        assert code.is_logical(x)
        assert code.is_logical(z)

    def test_double_gross_logical(self) -> None:
        """double gross 码的 X̄_1 权重为 18."""
        code = double_gross_code()
        assert bb_logical(code, (0, 0), "X").weight == 18

    def test_missing_table(self) -> None:
        """缺少多项式 g、h 时无法构造 Z̄."""
        with pytest.raises(InvalidInputError):
            bb_logical(double_gross_code(), (0, 0), "Z")

    def test_unreduced_monomial(self) -> None:
        """指数必须已约化."""
        with pytest.raises(InvalidInputError):
            bb_logical(gross_code(), (12, 0), "X")


class TestStabilizerCode:
    """测试 StabilizerCode 与 CssCode 容器."""

    def test_noncommuting_checks(self) -> None:
        """不对易的检查算符被拒绝."""
        with pytest.raises(CommutationError):
            StabilizerCode(1, [PauliOp.from_string("X"), PauliOp.from_string("Z")])

    def test_css_noncommuting(self) -> None:
        """hx·hzᵀ ≠ 0 的 CSS 码被拒绝."""
        with pytest.raises(CommutationError):
            css_from_dense([[1, 0]], [[1, 0]])

    def test_duplicate_labels(self) -> None:
        """标签重复被拒绝."""
        checks = [PauliOp.from_string("ZZI"), PauliOp.from_string("IZZ")]
        with pytest.raises(InvalidInputError):
            StabilizerCode(3, checks, ["a", "a"])

    def test_as_css(self) -> None:
        """纯 X/Z 检查的码可以转成 CssCode."""
        code = StabilizerCode(2, [PauliOp.from_string("XX"), PauliOp.from_string("ZZ")])
        css = code.as_css()
        assert css is not None
        assert css.hx.rows == 1
        assert css.hz.rows == 1
        assert css.k == 0

    def test_five_qubit_code_is_not_css(self) -> None:
        """[[5,1,3]] 码不是 CSS 码."""
        code = _five_qubit_code()
        assert code.k == 1
        assert code.as_css() is None

    def test_row_space(self) -> None:
        """RowSpace 的增量插入与成员判定."""
        space = RowSpace([0b011, 0b110])
        assert len(space) == 2
        assert 0b101 in space
        assert not space.add(0b101)
        assert space.add(0b001)


class TestNamedCodes:
    """测试常用码."""

    def test_surface_code(self) -> None:
        """d=3 旋转平面码为 [[9,1]]，X̄ 与 Z̄ 反对易."""
        code = rotated_surface_code(3)
        assert code.n == 9
        assert code.k == 1
        x, z = surface_logicals(3)
        assert code.is_logical(x)
        assert code.is_logical(z)
        assert not x.commutes(z)

    def test_surface_report(self) -> None:
        """d=3 平面码有 4 个 X 检查与 4 个 Z 检查."""
        report = tanner_report(rotated_surface_code(3))
        assert report.x_weights == {2: 2, 4: 2}
        assert report.z_weights == {2: 2, 4: 2}
        assert report.histogram_totals() == (8, 9)
        assert report.mixed_weights == {}

    def test_repetition_code(self) -> None:
        """重复码只有 Z 检查."""
        code = repetition_code(3)
        assert code.k == 1
        assert code.hx.rows == 0

    def test_repetition_too_short(self) -> None:
        """长度不足 2 时报错."""
        with pytest.raises(InvalidInputError):
            repetition_code(1)

    def test_surface_too_small(self) -> None:
        """码距不足 2 时报错."""
        with pytest.raises(InvalidInputError):
            rotated_surface_code(1)


class TestLogicals:
    """测试逻辑算符基与码态."""

    def test_css_basis_is_symplectic(self) -> None:
        """[[4,2,2]] 的逻辑对满足辛关系."""
        code = four_two_two()
        pairs = logical_basis(code)
        assert len(pairs) == 2
        for i, a in enumerate(pairs):
            assert a.x.is_x_type
            assert a.z.is_z_type
            for j, b in enumerate(pairs):
                assert a.x.commutes(b.z) == (i != j)

    def test_non_css_basis(self) -> None:
        """非 CSS 码的逻辑对由辛 Gram–Schmidt 给出."""
        code = _five_qubit_code()
        (pair,) = logical_basis(code)
        assert code.is_logical(pair.x)
        assert code.is_logical(pair.z)
        assert not pair.x.commutes(pair.z)

    def test_code_state(self) -> None:
        """码态被全部检查与 Z̄ 稳定."""
        code = rotated_surface_code(3)
        t = code_state(code)
        assert all(t.stabilizes(c) for c in code.checks)
        assert t.stabilizes(logical_basis(code)[0].z)

    def test_code_state_sign(self) -> None:
        """signs=-1 得到 Z̄ 的 −1 本征态."""
        code = repetition_code(2)
        t = code_state(code, basis="+", signs=[-1])
        x = logical_basis(code)[0].x
        assert t.measure(x).outcome == -1

    def test_code_state_sign_count(self) -> None:
        """符号个数必须等于 k."""
        with pytest.raises(InvalidInputError):
            code_state(four_two_two(), signs=[1])


class TestDistance:
    """测试码距计算."""

    @pytest.mark.parametrize(
        ("code", "expected"),
        [(rotated_surface_code(3), 3), (four_two_two(), 2), (repetition_code(3), 1), (_five_qubit_code(), 3)],
    )
    def test_exact(self, code: StabilizerCode, expected: int) -> None:
        """小码的精确码距."""
        assert distance_exact(code, 4) == expected

    def test_exact_no_logical(self) -> None:
        """k=0 的码没有逻辑算符."""
        assert distance_exact(css_from_dense([[1, 1]], [[1, 1]]), 2) is None

    def test_exact_budget(self) -> None:
        """超出枚举预算时抛出 BudgetExceededError."""
        with pytest.raises(BudgetExceededError):
            distance_exact(gross_code(), 12, budget=1000)

    def test_upper_bound(self, settings: Settings) -> None:
        """上界不小于真实码距，见证算符是逻辑算符."""
        code = rotated_surface_code(3)
        bound = distance_upper(code, trials=20, seed=1, settings=settings)
        assert bound.weight >= 3
        assert bound.witness.weight == bound.weight
        assert code.is_logical(bound.witness)

    @pytest.mark.parametrize(
        "code",
        [four_two_two(), rotated_surface_code(2), rotated_surface_code(3), _five_qubit_code()],
        ids=["422", "surface-2", "surface-3", "five-qubit"],
    )
    def test_upper_bound_is_tight(self, code: StabilizerCode, settings: Settings) -> None:
        """小码上足够多次试验的上界等于精确码距."""
        bound = distance_upper(code, trials=400, seed=0, settings=settings)
        assert bound.weight == distance_exact(code, 4)

    def test_upper_bound_deformed(self, code_422: CssCode, plan_422: GaugingPlan, settings: Settings) -> None:
        """形变后的 [[4,2,2]] 码上上界同样等于精确码距."""
        code = deform(code_422, plan_422).code
        assert code.k == 1
        bound = distance_upper(code, trials=400, seed=0, settings=settings)
        assert bound.weight == distance_exact(code, 4)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        ("name", "trials", "expected"),
        [("gross", 4000, 12), ("gross-deformed", 4000, 12), ("double-gross", 20000, 18)],
    )
    def test_upper_bound_bb(self, name: str, trials: int, expected: int) -> None:
        """gross 码、其形变码与 double gross 码的上界达到已知码距."""
        if name == "gross-deformed":
            recipe = preset_recipe("gross")
            code = deform(recipe.code, recipe.plan).code
        else:
            code = gross_code() if name == "gross" else double_gross_code()
        settings = Settings(worker_threads=4, search_shards=8)
        bound = distance_upper(code, trials=trials, seed=0, settings=settings)
        assert bound.weight == expected
        assert code.is_logical(bound.witness)

    def test_upper_bound_reproducible(self, settings: Settings) -> None:
        """相同 seed 给出相同的结果."""
        code = four_two_two()
        a = distance_upper(code, trials=10, seed=3, settings=settings)
        b = distance_upper(code, trials=10, seed=3, settings=settings)
        assert a == b

    def test_upper_bound_needs_logical(self, settings: Settings) -> None:
        """k=0 时报错."""
        with pytest.raises(InvalidInputError):
            distance_upper(css_from_dense([[1, 1]], [[1, 1]]), trials=5, settings=settings)
