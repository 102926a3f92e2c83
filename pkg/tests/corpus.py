"""Fixture corpus: failing Java test classes, differential-run subjects,
and toy repair bugs. Shared by the unit tests and the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SliceCase:
    name: str
    test_id: str
    files: dict[str, str]
    expected_slice: list[int] | None = None
    expected_passes: int | None = None
    loop_noise: bool = False
    has_irrelevant: bool = False


def _case(name, test_id, files, **kw) -> SliceCase:
    return SliceCase(name, test_id, files, **kw)


_JUNIT = "import static org.junit.Assert.*;\n"
_LISTS = "import java.util.List;\nimport java.util.ArrayList;\n"


SLICING_CASES: list[SliceCase] = [
    _case(
        "fig5_alias", "AliasTest#testAlias",
        {"AliasTest.java": _LISTS + _JUNIT + """
public class AliasTest {
    @Test
    public void testAlias() {
        List<String> listA = new ArrayList<String>();
        List<String> listB = listA;
        listB.add("x");
        assertEquals(0, listA.size());
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=2),
    _case(
        "single_stmt", "SingleTest#testBoom",
        {"SingleTest.java": _JUNIT + """
public class SingleTest {
    @Test
    public void testBoom() {
        fail("boom");
    }
}
"""},
        expected_slice=[0], expected_passes=1),
    _case(
        "irrelevant_assert", "IrrAssertTest#testMain",
        {"IrrAssertTest.java": _JUNIT + """
public class IrrAssertTest {
    @Test
    public void testMain() {
        int unrelated = 41 + 1;
        assertEquals(42, unrelated);
        int target = 2 * 3;
        assertEquals(7, target);
    }
}
"""},
        expected_slice=[2, 3], expected_passes=1, has_irrelevant=True),
    _case(
        "irrelevant_decls", "IrrDeclTest#testMain",
        {"IrrDeclTest.java": _LISTS + _JUNIT + """
public class IrrDeclTest {
    @Test
    public void testMain() {
        String noise = "zzz";
        List<String> junk = new ArrayList<String>();
        junk.add(noise);
        int x = 10;
        int y = x - 3;
        assertEquals(6, y);
    }
}
"""},
        expected_slice=[3, 4, 5], expected_passes=1, has_irrelevant=True),
    _case(
        "helper_depth1", "Helper1Test#testPad",
        {"Helper1Test.java": _JUNIT + """
public class Helper1Test {
    @Test
    public void testPad() {
        String got = pad("ab");
        assertEquals("<ab>!", got);
    }
    private String pad(String s) {
        return "<" + s + ">";
    }
}
"""},
        expected_slice=[0, 1], expected_passes=1),
    _case(
        "helper_depth3", "Helper3Test#testChain",
        {"Helper3Test.java": _JUNIT + """
public class Helper3Test {
    @Test
    public void testChain() {
        int got = a(1);
        assertEquals(111, got);
    }
    private int a(int v) { return b(v) + 1; }
    private int b(int v) { return c(v) + 10; }
    private int c(int v) { return v + 50; }
    private int lonely(int v) { return v; }
}
"""},
        expected_passes=1),
    _case(
        "field_via_helper", "FieldHelpTest#testScaled",
        {"FieldHelpTest.java": _JUNIT + """
public class FieldHelpTest {
    private int factor = 3;
    private int offset = 100;
    @Test
    public void testScaled() {
        int got = scale(5);
        assertEquals(16, got);
    }
    private int scale(int v) { return v * factor; }
}
"""},
        expected_passes=1),
    _case(
        "field_direct", "FieldDirectTest#testTol",
        {"FieldDirectTest.java": _JUNIT + """
public class FieldDirectTest {
    private double tolerance = 0.5;
    @Test
    public void testTol() {
        double measured = 1.25;
        assertTrue(measured < tolerance);
    }
}
"""},
        expected_slice=[0], expected_passes=1),
    _case(
        "loop_noise_scaler", "ScalerTest#testScale",
        {"Scaler.java": """
public class Scaler {
    public int scale(int v) {
        int acc = 0;
        for (int i = 0; i < 3; i++) {
            acc = acc + v;
        }
        return acc + 1;
    }
}
""",
         "ScalerTest.java": _JUNIT + """
public class ScalerTest {
    @Test
    public void testScale() {
        Scaler warmup = new Scaler();
        int burn = 0;
        for (int k = 0; k < 6; k++) {
            burn += warmup.scale(k);
        }
        assertTrue(burn > 0);
        Scaler subject = new Scaler();
        int got = subject.scale(3);
        assertEquals(9, got);
    }
}
"""},
        loop_noise=True, has_irrelevant=True),
    _case(
        "loop_noise_counter", "CounterTest#testTick",
        {"Counter.java": """
public class Counter {
    private int total = 0;
    public int tick(int step) {
        int i = 0;
        while (i < step) {
            total = total + 1;
            i++;
        }
        return total;
    }
}
""",
         "CounterTest.java": _JUNIT + """
public class CounterTest {
    @Test
    public void testTick() {
        Counter background = new Counter();
        for (int r = 0; r < 8; r++) {
            background.tick(2);
        }
        Counter fresh = new Counter();
        int got = fresh.tick(4);
        assertEquals(5, got);
    }
}
"""},
        loop_noise=True, has_irrelevant=True),
    _case(
        "loop_noise_mix", "MixTest#testFinal",
        {"Mixer.java": """
public class Mixer {
    public String mix(String a, String b) {
        String out = a;
        out = out + "-" + b;
        return out;
    }
}
""",
         "MixTest.java": _JUNIT + """
public class MixTest {
    @Test
    public void testFinal() {
        Mixer noisy = new Mixer();
        String waste = "";
        for (int i = 0; i < 5; i++) {
            waste = noisy.mix(waste, "n");
        }
        assertFalse(waste.isEmpty());
        Mixer clean = new Mixer();
        String got = clean.mix("a", "b");
        assertEquals("a+b", got);
    }
}
"""},
        loop_noise=True, has_irrelevant=True),
    _case(
        "loop_noise_gray", "GrayTest#testPaint",
        {"GrayScale.java": """import java.awt.Color;

public class GrayScale {
    private double lower = 0.0;
    private double upper = 1.0;
    public Color paint(double value) {
        double v = Math.max(value, lower);
        v = Math.min(v, upper);
        int g = (int) (value * 255.0);
        return new Color(g, g, g);
    }
}
""",
         "GrayTest.java": "import java.awt.Color;\n" + _JUNIT + """
public class GrayTest {
    @Test
    public void testPaint() {
        GrayScale sweeper = new GrayScale();
        double acc = 0.0;
        for (int i = 0; i <= 10; i++) {
            Color sample = sweeper.paint(i / 10.0);
            acc = acc + sample.getRed();
        }
        assertTrue(acc > 0.0);
        GrayScale subject = new GrayScale();
        Color c = subject.paint(-0.5);
        assertEquals(0, c.getRed());
    }
}
"""},
        loop_noise=True, has_irrelevant=True),
    _case(
        "mutation_via_call", "DatasetTest#testTotal",
        {"Dataset.java": _LISTS + """
public class Dataset {
    private List<Double> values = new ArrayList<Double>();
    public void addValue(double v, char r, char c) {
        values.add(v);
    }
    public int size() {
        return values.size();
    }
}
""",
         "DatasetTest.java": _JUNIT + """
public class DatasetTest {
    @Test
    public void testTotal() {
        Dataset dataset = new Dataset();
        dataset.addValue(1.0, 'r', 'c');
        dataset.addValue(2.0, 'r', 'd');
        assertEquals(3, dataset.size());
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=1),
    _case(
        "exception_mid_test", "BoundsTest#testGet",
        {"BoundsTest.java": _LISTS + _JUNIT + """
public class BoundsTest {
    @Test
    public void testGet() {
        List<String> names = new ArrayList<String>();
        names.add("only");
        String got = names.get(3);
        assertEquals("only", got);
    }
}
"""},
        expected_passes=1),
    _case(
        "alias_via_helper", "AliasHelpTest#testWrap",
        {"AliasHelpTest.java": _LISTS + _JUNIT + """
public class AliasHelpTest {
    @Test
    public void testWrap() {
        List<String> base = new ArrayList<String>();
        List<String> view = identity(base);
        view.add("v");
        assertEquals(0, base.size());
    }
    private List<String> identity(List<String> xs) { return xs; }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=2),
    _case(
        "alias_chain", "ChainTest#testDeep",
        {"ChainTest.java": _LISTS + _JUNIT + """
public class ChainTest {
    @Test
    public void testDeep() {
        List<String> orig = new ArrayList<String>();
        List<String> a = orig;
        List<String> b = a;
        List<String> c = b;
        c.add("deep");
        assertEquals(0, orig.size());
    }
}
"""},
        expected_slice=[0, 1, 2, 3, 4, 5], expected_passes=4),
    _case(
        "two_objects", "TwoObjTest#testSecond",
        {"TwoObjTest.java": _LISTS + "import java.util.HashMap;\n" + _JUNIT + """
public class TwoObjTest {
    @Test
    public void testSecond() {
        HashMap<String, Integer> junkMap = new HashMap<String, Integer>();
        List<Integer> nums = new ArrayList<Integer>();
        junkMap.put("a", 1);
        nums.add(7);
        junkMap.put("b", 2);
        assertEquals(2, nums.size());
    }
}
"""},
        expected_slice=[1, 3, 5], expected_passes=1, has_irrelevant=True),
    _case(
        "assert_true_branchy", "BranchTest#testCmp",
        {"BranchTest.java": _JUNIT + """
public class BranchTest {
    @Test
    public void testCmp() {
        int lhs = 2;
        int rhs = 9;
        if (rhs > 5) {
            lhs = lhs * 2;
        }
        assertTrue(lhs > rhs);
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=1),
    _case(
        "compound_try", "TryTest#testSafe",
        {"TryTest.java": _JUNIT + """
public class TryTest {
    @Test
    public void testSafe() {
        String parsed = "none";
        try {
            parsed = Integer.toString(Integer.parseInt("12"));
        } catch (NumberFormatException e) {
            parsed = "bad";
        }
        assertEquals("120", parsed);
    }
}
"""},
        expected_slice=[0, 1, 2], expected_passes=1),
    _case(
        "enhanced_for", "SumTest#testSum",
        {"SumTest.java": _LISTS + _JUNIT + """
public class SumTest {
    @Test
    public void testSum() {
        List<Integer> xs = new ArrayList<Integer>();
        xs.add(3);
        xs.add(4);
        int sum = 0;
        for (int x : xs) {
            sum += x;
        }
        assertEquals(8, sum);
    }
}
"""},
        expected_slice=[0, 1, 2, 3, 4, 5], expected_passes=2),
    _case(
        "stringbuilder", "SbTest#testBuild",
        {"SbTest.java": _JUNIT + """
public class SbTest {
    @Test
    public void testBuild() {
        StringBuilder sb = new StringBuilder();
        sb.append("a");
        sb.append("b");
        assertEquals("ba", sb.toString());
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=1),
    _case(
        "unused_creation", "SpareTest#testMath",
        {"SpareTest.java": _LISTS + _JUNIT + """
public class SpareTest {
    @Test
    public void testMath() {
        List<String> spare = new ArrayList<String>();
        double root = Math.sqrt(16.0);
        assertEquals(5.0, root, 0.0001);
    }
}
"""},
        expected_slice=[1, 2], expected_passes=1, has_irrelevant=True),
    _case(
        "primitive_only", "PrimTest#testOps",
        {"PrimTest.java": _JUNIT + """
public class PrimTest {
    @Test
    public void testOps() {
        int a = 7;
        int b = a / 2;
        int c = a % 2;
        assertEquals(5, b + c);
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=1),
    _case(
        "message_match", "MsgTest#testPick",
        {"MsgTest.java": _JUNIT + """
public class MsgTest {
    @Test
    public void testPick() {
        String left = "alpha";
        String right = "beta";
        assertEquals("alpha", left);
        assertEquals("gamma", right);
    }
}
"""},
        expected_passes=1),
    _case(
        "array_case", "ArrTest#testArr",
        {"ArrTest.java": _JUNIT + """
public class ArrTest {
    @Test
    public void testArr() {
        int[] xs = new int[]{1, 2, 3};
        xs[1] = 9;
        int got = xs[0] + xs[1];
        assertEquals(3, got);
    }
}
"""},
        expected_slice=[0, 1, 2, 3], expected_passes=2),
]


# ---- differential corpus for rule instrumentation -----------------------------


@dataclass
class DiffCase:
    name: str
    method: str
    drivers: list[str]  # statements for main(), use `s` as the instance
    fields: str = ""
    categories: tuple[str, ...] = ()


def _calls(expr_template: str, args: list) -> list[str]:
    return [
        "try { System.out.println(\"r= \" + " + expr_template.format(*a) + "); }"
        " catch (RuntimeException e) { System.out.println(\"ex= \" + e); }"
        for a in args
    ]


DIFF_CASES: list[DiffCase] = [
    DiffCase(
        "gcd",
        """public int gcd(int a, int b) {
        while (b != 0) {
            int t = a % b;
            a = b;
            b = t;
        }
        return a;
    }""",
        _calls("s.gcd({0}, {1})",
               [(12, 18), (7, 3), (100, 75), (5, 0), (0, 9), (270, 192),
                (17, 17), (1, 1), (99, 100), (36, 24)]),
        categories=("while", "var-init", "var-assign", "return-nonempty")),
    DiffCase(
        "clamp_if",
        """public int clamp(int v) {
        if (v < 0) {
            v = 0;
        }
        if (v > 100)
            v = 100;
        return v;
    }""",
        _calls("s.clamp({0})",
               [(-5,), (0,), (3,), (50,), (99,), (100,), (101,), (500,),
                (-100,), (7,)]),
        categories=("if", "var-assign", "return-nonempty")),
    DiffCase(
        "sum_for",
        """public int sumTo(int n) {
        int acc = 0;
        for (int i = 1; i <= n; i++) {
            acc += i;
        }
        return acc;
    }""",
        _calls("s.sumTo({0})",
               [(0,), (1,), (2,), (3,), (5,), (10,), (17,), (30,), (4,), (8,)]),
        categories=("for", "var-init", "var-assign", "return-nonempty")),
    DiffCase(
        "join_foreach",
        """public String join(int[] xs) {
        String out = "";
        for (int x : xs) {
            out = out + x + ";";
        }
        return out;
    }""",
        ["int[] a%d = new int[]{%s}; System.out.println(\"r= \" + s.join(a%d));"
         % (i, vals, i)
         for i, vals in enumerate(["1,2,3", "", "5", "9,9", "1,2,3,4,5",
                                   "0", "7,0,7", "2,4,6,8", "3,1", "10,20"])],
        categories=("enhanced-for", "var-assign", "return-nonempty")),
    DiffCase(
        "do_while_digits",
        """public int digits(int n) {
        int count = 0;
        do {
            count++;
            n = n / 10;
        } while (n > 0);
        return count;
    }""",
        _calls("s.digits({0})",
               [(0,), (5,), (9,), (10,), (99,), (100,), (12345,), (7,),
                (1000000,), (42,)]),
        categories=("do-while", "var-assign", "return-nonempty")),
    DiffCase(
        "void_empty_return",
        """public void record(int v) {
        if (v < 0) {
            return;
        }
        total = total + v;
    }""",
        ["s.record(%d); System.out.println(\"t= \" + s.total);" % v
         for v in (-3, 5, -1, 0, 7, 2, -9, 4, 1, 6)],
        fields="public int total = 0;",
        categories=("return-empty", "if", "var-assign", "multi-exit")),
    DiffCase(
        "multi_exit_grade",
        """public String grade(int score) {
        if (score >= 90) {
            return "A";
        }
        if (score >= 75) {
            return "B";
        }
        if (score >= 60) {
            return "C";
        }
        return "F";
    }""",
        _calls("s.grade({0})",
               [(95,), (90,), (89,), (75,), (74,), (60,), (59,), (0,),
                (100,), (61,)]),
        categories=("multi-exit", "if", "return-nonempty")),
    DiffCase(
        "nested_loops",
        """public int pairs(int n) {
        int count = 0;
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                count++;
            }
        }
        return count;
    }""",
        _calls("s.pairs({0})",
               [(0,), (1,), (2,), (3,), (4,), (5,), (6,), (7,), (8,), (10,)]),
        categories=("for", "var-assign", "return-nonempty")),
    DiffCase(
        "loop_exception",
        """public int charCodeSum(String input) {
        int pos = 0;
        int sum = 0;
        while (pos <= input.length()) {
            sum += Character.codePointAt(input, pos);
            pos += 1;
        }
        return sum;
    }""",
        _calls("s.charCodeSum({0})",
               [('"a"',), ('"ab"',), ('""',), ('"xyz"',), ('"q"',),
                ('"hello"',), ('"JJ"',), ('"0"',), ('"tt"',), ('"k"',)]),
        categories=("while", "var-assign", "exceptional-exit")),
    DiffCase(
        "string_branch",
        """public String normalize(String raw) {
        String trimmed = raw.trim();
        if (trimmed.isEmpty()) {
            return "(empty)";
        }
        String lower = trimmed.toLowerCase();
        return lower;
    }""",
        _calls("s.normalize({0})",
               [('" A "',), ('""',), ('"  "',), ('"Bc"',), ('"HELLO"',),
                ('" x"',), ('"Z "',), ('"mIxEd"',), ('"a"',), ('"  Q  "',)]),
        categories=("if", "var-init", "return-nonempty", "multi-exit")),
    DiffCase(
        "array_write",
        """public int histogramPeak(int[] values) {
        int[] buckets = new int[4];
        for (int v : values) {
            int idx = v % 4;
            buckets[idx] = buckets[idx] + 1;
        }
        int best = 0;
        for (int i = 0; i < 4; i++) {
            if (buckets[i] > best) {
                best = buckets[i];
            }
        }
        return best;
    }""",
        ["int[] h%d = new int[]{%s}; System.out.println(\"r= \" + s.histogramPeak(h%d));"
         % (i, vals, i)
         for i, vals in enumerate(["1,1,2", "4,8,12", "0", "1,2,3,4,5,6,7,8",
                                   "3,3,3,3", "5,9,13,1", "2", "6,7",
                                   "1,5,9,2,6", "0,0,0,1"])],
        categories=("enhanced-for", "for", "if", "var-assign",
                    "return-nonempty")),
    DiffCase(
        "ternary_mix",
        """public int absMax(int a, int b) {
        int x = a < 0 ? -a : a;
        int y = b < 0 ? -b : b;
        return x > y ? x : y;
    }""",
        _calls("s.absMax({0}, {1})",
               [(3, -4), (-3, 4), (0, 0), (-7, -2), (9, 9), (-1, 1),
                (5, -5), (100, -99), (-50, 49), (2, 3)]),
        categories=("var-init", "return-nonempty")),
    DiffCase(
        "double_math",
        """public double meanPositive(double[] xs) {
        double sum = 0.0;
        int n = 0;
        for (double x : xs) {
            if (x > 0.0) {
                sum += x;
                n++;
            }
        }
        if (n == 0) {
            return 0.0;
        }
        return sum / n;
    }""",
        ["double[] d%d = new double[]{%s}; System.out.println(\"r= \" + s.meanPositive(d%d));"
         % (i, vals, i)
         for i, vals in enumerate(["1.0,2.0,3.0", "-1.0,-2.0", "0.5",
                                   "-1.0,4.0", "2.5,2.5", "0.0",
                                   "10.0,-10.0,20.0", "1.25,3.75",
                                   "-0.5,0.5,1.5", "8.0"])],
        categories=("enhanced-for", "if", "var-assign", "return-nonempty",
                    "multi-exit")),
    DiffCase(
        "break_continue",
        """public int firstEvenAfter(int[] xs, int floor) {
        int found = -1;
        for (int x : xs) {
            if (x <= floor) {
                continue;
            }
            if (x % 2 == 0) {
                found = x;
                break;
            }
        }
        return found;
    }""",
        ["int[] e%d = new int[]{%s}; System.out.println(\"r= \" + s.firstEvenAfter(e%d, %d));"
         % (i, vals, i, floor)
         for i, (vals, floor) in enumerate([
             ("1,3,4,6", 2), ("1,3,5", 0), ("2,4,6", 5), ("8", 7),
             ("7,9,10", 9), ("", 0), ("5,6,7,8", 6), ("4", 4),
             ("11,13,14", 12), ("2,3,4", 1)])],
        categories=("enhanced-for", "if", "var-assign", "return-nonempty")),
    DiffCase(
        "empty_body_loop",
        """public int spin(int n) {
        int i = 0;
        while (i < n) i++;
        return i;
    }""",
        _calls("s.spin({0})",
               [(0,), (1,), (2,), (5,), (10,), (3,), (7,), (4,), (6,), (9,)]),
        categories=("while", "var-assign", "return-nonempty")),
    DiffCase(
        "pure_void",
        """public void log(String tag) {
        System.out.println("tag:" + tag);
    }""",
        ['s.log("a");', 's.log("b");', 's.log("");', 's.log("xyz");',
         's.log("1");', 's.log("zz");', 's.log("q");', 's.log("##");',
         's.log("last");', 's.log("t");'],
        categories=("fall-off", "expression-call")),
]


def _variant(base_name: str, op: str, seed: int) -> DiffCase:
    """Small arithmetic subjects to widen the corpus."""
    method = f"""public int f{seed}(int a, int b) {{
        int acc = {seed % 5};
        for (int i = 0; i < 3; i++) {{
            acc = acc {op} (a - b + i);
        }}
        if (acc < 0)
            acc = -acc;
        while (acc > 100) {{
            acc = acc - 100;
        }}
        return acc + b;
    }}"""
    args = [((seed * 3 + k) % 17 - 5, (seed + k * 7) % 13 - 3)
            for k in range(10)]
    return DiffCase(f"{base_name}{seed}", method,
                    _calls(f"s.f{seed}({{0}}, {{1}})", args),
                    categories=("for", "if", "while", "var-assign",
                                "return-nonempty"))


DIFF_CASES += [_variant("arith", op, seed)
               for seed, op in enumerate(["+", "-", "*", "+", "-", "*",
                                          "+", "-", "*", "+", "-", "*",
                                          "+", "-", "*"], start=1)]


def subject_class(case: DiffCase, method_source: str) -> str:
    drivers = "\n        ".join(case.drivers)
    fields = f"    {case.fields}\n" if case.fields else ""
    return f"""public class Subject {{
{fields}    {method_source}

    public static void main(String[] args) {{
        Subject s = new Subject();
        {drivers}
    }}
}}
"""


def diff_case_line_range(case: DiffCase) -> tuple[int, int]:
    """Line range of the subject method inside subject_class output."""
    text = subject_class(case, case.method)
    lines = text.splitlines()
    sig_line = case.method.splitlines()[0].strip()
    start = next(i for i, ln in enumerate(lines, 1) if sig_line in ln)
    depth = 0
    for i in range(start - 1, len(lines)):
        depth += lines[i].count("{") - lines[i].count("}")
        if depth == 0 and i >= start - 1 and "{" in "".join(lines[start - 1:i + 1]):
            return start, i + 1
    return start, len(lines)


# ---- toy repair bugs -----------------------------------------------------------


@dataclass
class ToyBug:
    name: str
    files: dict[str, str]
    failing_test: str
    buggy_file: str
    buggy_function: str
    correct_patch: str
    wrong_patch: str


TOY_BUGS: list[ToyBug] = [
    ToyBug(
        "off_by_one",
        {"Adder.java": """public class Adder {
    public int addUp(int n) {
        int acc = 0;
        for (int i = 1; i < n; i++) {
            acc += i;
        }
        return acc;
    }
}
""",
         "AdderTest.java": _JUNIT + """
public class AdderTest {
    @Test
    public void testAddUp() {
        Adder a = new Adder();
        assertEquals(10, a.addUp(4));
    }
}
"""},
        "AdderTest#testAddUp", "Adder.java", "addUp",
        correct_patch="""    public int addUp(int n) {
        int acc = 0;
        for (int i = 1; i <= n; i++) {
            acc += i;
        }
        return acc;
    }""",
        wrong_patch="""    public int addUp(int n) {
        int acc = 1;
        for (int i = 1; i < n; i++) {
            acc += i;
        }
        return acc;
    }"""),
    ToyBug(
        "wrong_operand",
        {"Scale.java": """public class Scale {
    public int toPercent(double ratio) {
        double clamped = Math.max(0.0, Math.min(1.0, ratio));
        int pct = (int) (ratio * 100.0);
        return pct;
    }
}
""",
         "ScaleTest.java": _JUNIT + """
public class ScaleTest {
    @Test
    public void testToPercent() {
        Scale s = new Scale();
        assertEquals(0, s.toPercent(-0.25));
        assertEquals(100, s.toPercent(1.5));
        assertEquals(50, s.toPercent(0.5));
    }
}
"""},
        "ScaleTest#testToPercent", "Scale.java", "toPercent",
        correct_patch="""    public int toPercent(double ratio) {
        double clamped = Math.max(0.0, Math.min(1.0, ratio));
        int pct = (int) (clamped * 100.0);
        return pct;
    }""",
        wrong_patch="""    public int toPercent(double ratio) {
        double clamped = Math.max(0.0, Math.min(1.0, ratio));
        int pct = (int) (ratio * 100.0);
        if (pct < 0) pct = 0;
        return pct;
    }"""),
    ToyBug(
        "bad_guard",
        {"Finder.java": """public class Finder {
    public int indexOfMax(int[] xs) {
        int best = 0;
        for (int i = 1; i < xs.length; i++) {
            if (xs[i] < xs[best]) {
                best = i;
            }
        }
        return best;
    }
}
""",
         "FinderTest.java": _JUNIT + """
public class FinderTest {
    @Test
    public void testIndexOfMax() {
        Finder f = new Finder();
        int[] xs = new int[]{3, 9, 4};
        assertEquals(1, f.indexOfMax(xs));
    }
}
"""},
        "FinderTest#testIndexOfMax", "Finder.java", "indexOfMax",
        correct_patch="""    public int indexOfMax(int[] xs) {
        int best = 0;
        for (int i = 1; i < xs.length; i++) {
            if (xs[i] > xs[best]) {
                best = i;
            }
        }
        return best;
    }""",
        wrong_patch="""    public int indexOfMax(int[] xs) {
        int best = 0;
        for (int i = 0; i < xs.length; i++) {
            if (xs[i] < xs[best]) {
                best = i;
            }
        }
        return best;
    }"""),
    ToyBug(
        "string_trim",
        {"Labeler.java": """public class Labeler {
    public String label(String name) {
        String cleaned = name;
        if (cleaned.isEmpty()) {
            return "(anonymous)";
        }
        return "[" + cleaned + "]";
    }
}
""",
         "LabelerTest.java": _JUNIT + """
public class LabelerTest {
    @Test
    public void testLabel() {
        Labeler l = new Labeler();
        assertEquals("[bob]", l.label("  bob "));
        assertEquals("(anonymous)", l.label("   "));
    }
}
"""},
        "LabelerTest#testLabel", "Labeler.java", "label",
        correct_patch="""    public String label(String name) {
        String cleaned = name.trim();
        if (cleaned.isEmpty()) {
            return "(anonymous)";
        }
        return "[" + cleaned + "]";
    }""",
        wrong_patch="""    public String label(String name) {
        String cleaned = name;
        if (cleaned.isEmpty()) {
            return "(anonymous)";
        }
        return "<" + cleaned + ">";
    }"""),
    ToyBug(
        "accumulator_reset",
        {"Tally.java": """public class Tally {
    public int countEvens(int[] xs) {
        int count = 0;
        for (int x : xs) {
            if (x % 2 == 0) {
                count = 1;
            }
        }
        return count;
    }
}
""",
         "TallyTest.java": _JUNIT + """
public class TallyTest {
    @Test
    public void testCountEvens() {
        Tally t = new Tally();
        int[] xs = new int[]{2, 4, 5, 6};
        assertEquals(3, t.countEvens(xs));
    }
}
"""},
        "TallyTest#testCountEvens", "Tally.java", "countEvens",
        correct_patch="""    public int countEvens(int[] xs) {
        int count = 0;
        for (int x : xs) {
            if (x % 2 == 0) {
                count = count + 1;
            }
        }
        return count;
    }""",
        wrong_patch="""    public int countEvens(int[] xs) {
        int count = 0;
        for (int x : xs) {
            if (x % 2 == 0) {
                count = 2;
            }
        }
        return count;
    }"""),
]


def find_method_lines(file_text: str, method_name: str) -> tuple[int, int]:
    """1-based line range of a method definition in a class file."""
    lines = file_text.splitlines()
    start = None
    for i, line in enumerate(lines, 1):
        if f" {method_name}(" in line and "{" in line:
            start = i
            break
    if start is None:
        raise ValueError(f"method {method_name} not found")
    depth = 0
    for i in range(start - 1, len(lines)):
        depth += lines[i].count("{") - lines[i].count("}")
        if depth == 0:
            return start, i + 1
    raise ValueError("unbalanced braces")
