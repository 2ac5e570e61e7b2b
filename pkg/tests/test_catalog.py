import random

import pytest

from esikit.catalog import (
    AlgorithmClass,
    AlgorithmMetrics,
    CatalogError,
    MetricCatalog,
    default_catalog,
    dump_catalog,
    load_catalog,
    parse_catalog,
    save_catalog,
)

MINIMAL = """\
class,name,power_mw,throughput_gbps,slices,critical_path_ns
encryption,DES,103,7.45,456,2.468
hash,MD5,112,0.916,992,7.31
key_exchange,RSA,1589,0.298,13910,3.85
"""


def test_default_catalog_shape():
    cat = default_catalog()
    assert cat.sizes == (7, 3, 3)
    assert cat.n_suites == 63


def test_default_catalog_spot_values():
    cat = default_catalog()
    md5 = cat.hash[2]
    assert (md5.name, md5.slices, md5.power_mw, md5.throughput_gbps) == ("MD5", 992, 112.0, 0.916)
    assert md5.critical_path_ns == 7.31
    rsa = cat.key_exchange[0]
    assert (rsa.name, rsa.slices, rsa.power_mw, rsa.throughput_gbps) == ("RSA", 13910, 1589.0, 0.298)
    assert [a.name for a in cat.encryption] == ["AES", "RC4", "Grain", "Salsa", "DES", "3DES", "Idea"]
    grain = cat.encryption[2]
    assert grain.power_mw == 99.7  # powers are reals, not integers


def test_default_catalog_matches_shipped_csv(default_catalog_text):
    assert parse_catalog(default_catalog_text) == default_catalog()


def test_parse_single_row_values():
    cat = parse_catalog(MINIMAL)
    des = cat.encryption[0]
    assert des.power_mw == 103.0
    assert des.throughput_gbps == 7.45
    assert des.slices == 456


def test_minimal_catalog_is_valid():
    cat = parse_catalog(MINIMAL)
    assert cat.sizes == (1, 1, 1)


def test_comments_and_blank_lines_skipped():
    text = "# leading comment\n\n" + MINIMAL + "\n# trailing comment\n"
    assert parse_catalog(text) == parse_catalog(MINIMAL)


def test_entry_order_defines_indices():
    text = MINIMAL + "encryption,AES,1183,1.067,11385,2.939\n"
    cat = parse_catalog(text)
    assert [a.name for a in cat.encryption] == ["DES", "AES"]


@pytest.mark.parametrize(
    "bad_row,needle",
    [
        ("encryption,ZeroT,103,0,456,2.468", "ZeroT"),
        ("encryption,NegP,-3,7.45,456,2.468", "NegP"),
        ("encryption,ZeroR,103,7.45,0,2.468", "ZeroR"),
        ("encryption,BadNum,abc,7.45,456,2.468", "BadNum"),
        ("mystery,DES2,103,7.45,456,2.468", "mystery"),
        ("encryption,Short,103,7.45", "fields"),
    ],
)
def test_invalid_rows_name_the_offender(bad_row, needle):
    with pytest.raises(CatalogError) as excinfo:
        parse_catalog(MINIMAL + bad_row + "\n")
    assert needle in str(excinfo.value)
    assert "line 5" in str(excinfo.value)


def test_duplicate_name_within_class_rejected():
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog(MINIMAL + "encryption,DES,110,7.0,500,2.5\n")


def test_duplicate_name_across_classes_allowed():
    cat = parse_catalog(MINIMAL + "hash,DES,110,7.0,500,2.5\n")
    assert [a.name for a in cat.hash] == ["MD5", "DES"]


def test_missing_class_rejected():
    text = "\n".join(MINIMAL.splitlines()[:-1]) + "\n"  # drop the key_exchange row
    with pytest.raises(CatalogError, match="key_exchange"):
        parse_catalog(text)


def test_bad_header_rejected():
    with pytest.raises(CatalogError, match="header"):
        parse_catalog("name,class\nencryption,DES\n")


def test_empty_document_rejected():
    with pytest.raises(CatalogError, match="header"):
        parse_catalog("# nothing here\n")


def test_round_trip_default():
    cat = default_catalog()
    assert parse_catalog(dump_catalog(cat)) == cat


def test_round_trip_random_catalogs():
    rng = random.Random(0xC0FFEE)
    for _ in range(25):
        def entries(algo_class, count):
            return tuple(
                AlgorithmMetrics(
                    name=f"{algo_class.value[:3]}{idx}",
                    algo_class=algo_class,
                    power_mw=rng.uniform(1e-3, 5e3),
                    throughput_gbps=rng.uniform(1e-3, 50.0),
                    slices=rng.randint(1, 50_000),
                    critical_path_ns=rng.uniform(0.1, 20.0),
                )
                for idx in range(count)
            )

        cat = MetricCatalog(
            encryption=entries(AlgorithmClass.ENCRYPTION, rng.randint(1, 6)),
            hash=entries(AlgorithmClass.HASH, rng.randint(1, 6)),
            key_exchange=entries(AlgorithmClass.KEY_EXCHANGE, rng.randint(1, 6)),
        )
        assert parse_catalog(dump_catalog(cat)) == cat


def test_load_and_save_files(tmp_path):
    path = tmp_path / "cat.csv"
    save_catalog(default_catalog(), path)
    assert load_catalog(path) == default_catalog()


def test_default_catalog_passes_load_validation():
    # the compiled-in default goes through the same validation as parsed files
    parse_catalog(dump_catalog(default_catalog())).validate()
