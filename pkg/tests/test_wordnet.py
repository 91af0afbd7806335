from __future__ import annotations

import os
import shutil

import pytest

from lexilevel.errors import FormatError, MissingFile
from lexilevel.levels import LemmaKey, PartOfSpeech
from lexilevel.wordnet import (
    SynsetId,
    UnknownSenseKey,
    UnknownSynset,
    glosses_for,
    load_wordnet,
    neighbors,
    resolve_sense_key,
    synset_words,
)

NOUN = PartOfSpeech.NOUN
VERB = PartOfSpeech.VERB
ADJ = PartOfSpeech.ADJECTIVE
ADV = PartOfSpeech.ADVERB


def test_store_counts(store):
    assert len(store.synsets) == 19
    assert len(store.senses) == 25  # MWE lemmas parsed but not indexed
    assert len(store.sense_index) == 26


def test_no_mwe_lemma_indexed(store):
    for key in store.senses:
        assert "_" not in key.surface
        assert " " not in key.surface


def test_every_sense_synset_exists_and_gloss_nonempty(store):
    for senses in store.senses.values():
        for sense in senses:
            assert sense.synset in store.synsets
            assert sense.gloss


def test_glosses_for_bank_in_index_order(store):
    glosses = glosses_for(store, LemmaKey("bank", NOUN))
    assert len(glosses) == 2
    assert glosses[0][0] == SynsetId(9217230, NOUN)
    assert glosses[0][1] == "sloping land (especially the slope beside a body of water)"
    assert glosses[1][0] == SynsetId(8420278, NOUN)


def test_glosses_for_unknown_lemma_is_empty(store):
    assert glosses_for(store, LemmaKey("xylophone", NOUN)) == []


def test_gloss_examples_are_stripped_but_kept(store):
    synset = store.synsets[SynsetId(9217230, NOUN)]
    assert '"' not in synset.gloss
    assert len(synset.examples) == 2
    assert synset.examples[0] == "they pulled the canoe up on the bank"


def test_sense_key_round_trip_for_every_sense(store):
    for senses in store.senses.values():
        for sense in senses:
            assert resolve_sense_key(store, sense.sense_key) == (sense.synset, sense.lemma)


def test_resolve_sense_key_unknown_and_mwe(store):
    with pytest.raises(UnknownSenseKey):
        resolve_sense_key(store, "xyz")
    with pytest.raises(UnknownSenseKey):
        resolve_sense_key(store, "credit_card%1:21:00::")


def test_satellite_sense_key_resolves_to_adjective(store):
    synset, lemma = resolve_sense_key(store, "quick%5:00:00:fast:00")
    assert synset == SynsetId(976885, ADJ)
    assert lemma == LemmaKey("quick", ADJ)


def test_neighbors_animal_subtree(store):
    animal = SynsetId(15388, NOUN)
    assert neighbors(store, animal, "hyponym") == [
        SynsetId(2084071, NOUN),
        SynsetId(2121620, NOUN),
        SynsetId(2374451, NOUN),
    ]
    assert neighbors(store, SynsetId(2084071, NOUN), "hyponym") == []
    assert neighbors(store, animal, "hypernym") == [SynsetId(1740, NOUN)]


def test_neighbors_unknown_synset_and_kind(store):
    with pytest.raises(UnknownSynset):
        neighbors(store, SynsetId(99999999, NOUN), "hyponym")
    with pytest.raises(ValueError):
        neighbors(store, SynsetId(15388, NOUN), "meronym")


def test_synonym_kind_is_co_membership(store):
    animal = SynsetId(15388, NOUN)
    assert neighbors(store, animal, "synonym") == [animal]
    assert synset_words(store, animal) == ("animal", "animate_being")


def test_relation_symmetry_on_fixture(store):
    for sid, synset in store.synsets.items():
        for target in synset.relations.get("hyponym", ()):
            assert sid in store.synsets[target].relations.get("hypernym", ())
        for target in synset.relations.get("hypernym", ()):
            assert sid in store.synsets[target].relations.get("hyponym", ())
        for target in synset.relations.get("antonym", ()):
            assert sid in store.synsets[target].relations.get("antonym", ())


def test_verb_frames_are_tolerated(store):
    sense = store.senses[LemmaKey("run", VERB)][0]
    assert sense.gloss == "move fast on foot"
    assert sense.relations["hypernym"] == (SynsetId(1835496, VERB),)


def test_cross_pos_lemma(store):
    assert len(store.senses[LemmaKey("run", NOUN)]) == 1
    assert len(store.senses[LemmaKey("run", VERB)]) == 1


def test_exotic_but_legal_records(tmp_path):
    """Marker-suffixed words, instance pointers, and pointer kinds outside
    the indexed four all parse without error."""
    data_noun = (
        "00000001 18 n 01 physicist 0 001 ~i 00000002 n 0000 | a scientist trained in physics\n"
        "00000002 18 n 01 einstein 0 003 @i 00000001 n 0000 ;c 00000001 n 0000 "
        '+ 00000001 n 0101 | physicist born in Germany; "Einstein formulated relativity"\n'
    )
    index_noun = "einstein n 1 1 @ 1 1 00000002\nphysicist n 1 1 ~ 1 1 00000001\n"
    index_sense = "einstein%1:18:00:: 00000002 1 1\nphysicist%1:18:00:: 00000001 1 2\n"
    data_adj = (
        "00000005 00 a 01 galore(ip) 0 000 | existing in abundance\n"
    )
    index_adj = "galore a 1 0 1 0 00000005\n"
    index_sense += "galore%3:00:00:: 00000005 1 0\n"
    for suffix, data, index in [
        ("noun", data_noun, index_noun),
        ("verb", "", ""),
        ("adj", data_adj, index_adj),
        ("adv", "", ""),
    ]:
        (tmp_path / f"data.{suffix}").write_text(data)
        (tmp_path / f"index.{suffix}").write_text(index)
    (tmp_path / "index.sense").write_text(index_sense)
    store = load_wordnet(str(tmp_path))
    einstein = SynsetId(2, NOUN)
    # Instance pointers fold into the plain hierarchy kinds; others are
    # parsed past but not indexed.
    assert neighbors(store, einstein, "hypernym") == [SynsetId(1, NOUN)]
    assert neighbors(store, SynsetId(1, NOUN), "hyponym") == [einstein]
    assert store.synsets[SynsetId(5, ADJ)].words == ("galore(ip)",)


def test_minimal_three_synset_database(tmp_path):
    data_noun = (
        "00000001 05 n 01 oak 0 001 ~ 00000002 n 0000 | "
        'a large tree; "the oak grew tall"\n'
        "00000002 05 n 01 sapling 0 001 @ 00000001 n 0000 | a young tree\n"
        "00000003 05 n 01 acorn 0 000 | the nut of the oak\n"
    )
    index_noun = (
        "acorn n 1 0 1 0 00000003\n"
        "oak n 1 1 ~ 1 1 00000001\n"
        "sapling n 1 1 @ 1 0 00000002\n"
    )
    index_sense = (
        "acorn%1:05:00:: 00000003 1 0\n"
        "oak%1:05:00:: 00000001 1 3\n"
        "sapling%1:05:00:: 00000002 1 1\n"
    )
    for suffix in ("noun", "verb", "adj", "adv"):
        (tmp_path / f"data.{suffix}").write_text(data_noun if suffix == "noun" else "")
        (tmp_path / f"index.{suffix}").write_text(index_noun if suffix == "noun" else "")
    (tmp_path / "index.sense").write_text(index_sense)
    store = load_wordnet(str(tmp_path))
    assert len(store.synsets) == 3
    assert all(synset.gloss for synset in store.synsets.values())
    assert store.synsets[SynsetId(1, NOUN)].examples == ("the oak grew tall",)


def test_missing_directory():
    with pytest.raises(MissingFile):
        load_wordnet("/nonexistent/wordnet")


def test_empty_directory(tmp_path):
    with pytest.raises(MissingFile):
        load_wordnet(str(tmp_path))


def test_missing_single_file(tmp_path, wordnet_dir):
    shutil.copytree(wordnet_dir, tmp_path / "wn")
    os.remove(tmp_path / "wn" / "index.sense")
    with pytest.raises(MissingFile) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert "index.sense" in str(excinfo.value)


def _corrupt_line(src_dir: str, dst_dir: str, filename: str, lineno: int, new_line: str) -> None:
    shutil.copytree(src_dir, dst_dir)
    path = os.path.join(dst_dir, filename)
    with open(path, encoding="utf-8") as handle:
        lines = handle.readlines()
    lines[lineno - 1] = new_line + "\n"
    with open(path, "w", encoding="utf-8") as handle:
        handle.writelines(lines)


def test_malformed_data_line_reports_file_and_line(tmp_path, wordnet_dir):
    # Line 5 of data.noun (dog) gets a truncated record.
    _corrupt_line(wordnet_dir, str(tmp_path / "wn"), "data.noun", 5, "02084071 05 n 01 dog")
    with pytest.raises(FormatError) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert excinfo.value.file == "data.noun"
    assert excinfo.value.line == 5


def test_malformed_index_line_reports_file_and_line(tmp_path, wordnet_dir):
    _corrupt_line(wordnet_dir, str(tmp_path / "wn"), "index.noun", 4, "cat n x y")
    with pytest.raises(FormatError) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert excinfo.value.file == "index.noun"
    assert excinfo.value.line == 4


def test_index_referencing_unknown_synset(tmp_path, wordnet_dir):
    _corrupt_line(wordnet_dir, str(tmp_path / "wn"), "index.noun", 4, "cat n 1 1 @ 1 1 99999999")
    with pytest.raises(FormatError) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert excinfo.value.file == "index.noun"


def test_malformed_sense_key_line(tmp_path, wordnet_dir):
    _corrupt_line(wordnet_dir, str(tmp_path / "wn"), "index.sense", 6, "cat%9:05:00:: 02121620 1 8")
    with pytest.raises(FormatError) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert excinfo.value.file == "index.sense"
    assert excinfo.value.line == 6


def test_data_line_without_gloss_delimiter(tmp_path, wordnet_dir):
    _corrupt_line(
        wordnet_dir, str(tmp_path / "wn"), "data.adv", 3, "00086592 02 r 01 slowly 0 000 no gloss"
    )
    with pytest.raises(FormatError) as excinfo:
        load_wordnet(str(tmp_path / "wn"))
    assert excinfo.value.file == "data.adv"
    assert excinfo.value.line == 3


@pytest.mark.skipif(
    not os.environ.get("LEXILEVEL_WORDNET_DIR"),
    reason="real WordNet database not supplied (set LEXILEVEL_WORDNET_DIR)",
)
def test_real_wordnet_parses_cleanly_and_bank_has_ten_noun_synsets():
    store = load_wordnet(os.environ["LEXILEVEL_WORDNET_DIR"])
    assert len(glosses_for(store, LemmaKey("bank", NOUN))) == 10
