#!/usr/bin/env python3
"""Regenerates the bundled sample corpora (train.txt, eval_news.txt, eval_mixed.txt).

Words are Bengali noun and verb stems with common inflections, mixed with
ASCII English words. Output is NFC, LF line endings, single spaces.
The generator is deterministic; rerunning it reproduces the checked-in files.
"""

import random
import unicodedata
from pathlib import Path

NOUNS = """
মানুষ বাড়ি শহর গ্রাম নদী পাখি ফুল বই কলম খাতা স্কুল ছাত্র শিক্ষক বন্ধু মা বাবা
ভাই বোন দেশ ভাষা কথা গান খেলা কাজ সময় দিন রাত সকাল বিকাল আকাশ মাটি জল পানি
ভাত মাছ দুধ চা রাস্তা গাড়ি ট্রেন বাজার দোকান টাকা হাত চোখ মুখ মাথা পা গাছ পাতা
বৃষ্টি রোদ সূর্য চাঁদ তারা সমুদ্র পাহাড় বন শিশু মেয়ে ছেলে লোক সরকার অফিস হাসপাতাল
ডাক্তার রোগী খবর কাগজ চিঠি ছবি সিনেমা বাংলাদেশ ঢাকা কলকাতা ভারত পৃথিবী জীবন স্বপ্ন
আশা ভালোবাসা সুখ দুঃখ শক্তি বিজ্ঞান প্রযুক্তি কম্পিউটার যন্ত্র শব্দ বাক্য অক্ষর উচ্চারণ
বক্তৃতা প্রশ্ন উত্তর পরীক্ষা ফলাফল বিশ্ববিদ্যালয় গবেষণা ইতিহাস সংস্কৃতি নৌকা মাঝি কৃষক
ধান ক্ষেত শীত গরম বসন্ত মেঘ বাতাস ঝড় আগুন ঘর দরজা জানালা টেবিল চেয়ার বিছানা কাপড়
জামা জুতা পোশাক খাবার রান্না মিষ্টি ফল আম কাঁঠাল কলা নারিকেল বাগান পুকুর সাপ বাঘ
হাতি গরু ছাগল বিড়াল কুকুর মুরগি ডিম রুটি চাল ডাল তেল লবণ চিনি পরিবার সমাজ রাজনীতি
নির্বাচন আইন আদালত পুলিশ সেনা যুদ্ধ শান্তি স্বাধীনতা মুক্তি ভোট নেতা মন্ত্রী সংসদ
প্রধানমন্ত্রী রাষ্ট্রপতি অর্থনীতি ব্যবসা শিল্প কারখানা শ্রমিক বেতন বাজেট ব্যাংক ঋতুরাজ
""".split()

VERB_STEMS = """
কর বল চল পড় লিখ দেখ শুন বস হাস খেল ধর রাখ ফির উঠ নাম জান মান বুঝ ভাব শিখ
""".split()

NOUN_SUFFIXES = ["", "", "", "টি", "টা", "গুলো", "গুলি", "কে", "র", "ের", "তে",
                 "ে", "দের", "রা", "ও", "ই", "েরা", "য়"]
VERB_SUFFIXES = ["ি", "ো", "ে", "েন", "ছি", "ছে", "ছেন", "লাম", "ল", "লে", "বে",
                 "ব", "বেন", "েছি", "েছে", "েছেন", "তে", "া", "ার", "ছিলাম"]

ENGLISH = """
the of and to in is was for on that with as by at from this are be it an
speech recognition model token tokens word words vocabulary subword unit units
language acoustic training data corpus test evaluation error rate baseline result
results system systems network neural convolutional greedy decoding merge merges
frequency frequent character characters segmentation lexicon pronunciation phone
phoneme audio signal frame feature features window stride layer layers block
blocks batch normalization loss output input hidden weight weights gradient
learning rate epoch epochs validation development set sets hour hours read
broadcast news dataset datasets label labels sentence sentences text texts
morphology morphological inflection inflectional productive rich poor suffix
prefix stem stems root roots number numbers small large larger smaller best
better worse improve improved improvement reduce reduced reduction increase
increased overfit overfitting generalization robust robustness domain distribution
out unseen seen new old first second third final table figure section method
methods approach approaches experiment experiments setup compare compared
comparison analysis study studies work future direction directions deep
computer science university research researcher researchers student students
teacher teachers school schools book books paper papers write wrote written
reading writing speak speaking spoken listen listening river village city
country people person family house home road car train market shop money
""".split()

ENGLISH_SUFFIXES = ["", "", "", "s", "ed", "ing", "er", "ly"]

OOV_NEWS = ["ঋণ", "ঋণের", "ঋতু", "ঋতুর", "ঋষি"]
OOV_MIXED = ["ঈদ", "ঈদের", "ঈশ্বর", "উৎসব", "উৎসবের"]


def nfc(text):
    return unicodedata.normalize("NFC", text)


def inflect(stems, suffixes):
    forms = []
    for stem in stems:
        for suffix in suffixes:
            forms.append(nfc(stem + suffix))
    return sorted(set(forms))


def sentences(rng, vocab, count, min_len=5, max_len=12):
    weights = [1.0 / (rank + 1) ** 0.8 for rank in range(len(vocab))]
    lines = []
    for _ in range(count):
        n = rng.randint(min_len, max_len)
        lines.append(" ".join(rng.choices(vocab, weights=weights, k=n)))
    return lines


def coverage_lines(rng, words, per_line=8):
    words = list(words)
    rng.shuffle(words)
    return [" ".join(words[i:i + per_line]) for i in range(0, len(words), per_line)]


def main():
    rng = random.Random(20231018)
    out = Path(__file__).resolve().parent

    nouns = [w for w in NOUNS if "ঋ" not in w]
    bengali = inflect(nouns, NOUN_SUFFIXES) + inflect(VERB_STEMS, VERB_SUFFIXES)
    english = inflect(ENGLISH, ENGLISH_SUFFIXES)

    train_words = sorted(set(bengali) | set(english))
    rng.shuffle(train_words)
    held_out = set(train_words[:150])
    train_vocab = [w for w in train_words if w not in held_out]

    train = coverage_lines(rng, train_vocab) + sentences(rng, train_vocab, 2500)
    rng.shuffle(train)

    held = sorted(held_out)
    news_vocab = held[:75] + OOV_NEWS + train_vocab[:300]
    mixed_vocab = held[75:] + OOV_MIXED + [w for w in train_vocab if w.isascii()][:200]
    news = sentences(rng, news_vocab, 300)
    mixed = sentences(rng, mixed_vocab, 300)
    news_set = set(news)
    mixed = [line for line in mixed if line not in news_set]

    train_text = "\n".join(train) + "\n"
    for oov in ("ঋ", "ঈ", "ৎ"):
        assert oov not in train_text, oov

    (out / "train.txt").write_text(train_text, encoding="utf-8")
    (out / "eval_news.txt").write_text("\n".join(news) + "\n", encoding="utf-8")
    (out / "eval_mixed.txt").write_text("\n".join(mixed) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
