#!/usr/bin/env python3
"""Generate the end-to-end test fixture corpus.

Writes a 3-language (en/fr/de), 3-day synthetic news collection plus the
gazetteer, suffix tables, title triggers, overrides, reference corpora and
a labeled thesaurus-training corpus under tests/fixtures/.  Everything is
fully deterministic: doc content comes from fixed templates, no RNG.

Run from the repository root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

DATES = ["2005-04-25", "2005-04-26", "2005-04-27"]
LANGUAGES = ["de", "en", "fr"]

GAZETTEER = """\
# entry_id  kind  canonical  aliases  suffix_class  lat  lon  country  population
101\tplace\tPyongyang\tPjöngjang\t\t39.03\t125.75\tKP\t2870000
102\tplace\tWashington\t\t\t38.9\t-77.03\tUS\t705000
103\tplace\tSeoul\tSéoul\t\t37.56\t126.99\tKR\t9700000
104\tplace\tNorth Korea\tCorée du Nord|Nordkorea\t\t40.0\t127.0\tKP\t25000000
105\tplace\tSakhir\t\t\t26.03\t50.51\tBH\t3000
120\tplace\tBahrain\tBahreïn\t\t26.0\t50.55\tBH\t1500000
121\tplace\tManama\t\t\t26.22\t50.58\tBH\t200000
106\tplace\tRome\tRom|Roma\t\t41.89\t12.48\tIT\t2870000
107\tplace\tVatican\tVatikan\t\t41.9\t12.45\tVA\t800
108\tplace\tBaghdad\tBagdad\t\t33.31\t44.36\tIQ\t7000000
109\tplace\tParis\t\t\t48.85\t2.35\tFR\t2148000
110\tplace\tBerlin\t\t\t52.52\t13.4\tDE\t3600000
111\tplace\tLondon\tLondres\t\t51.5\t-0.12\tGB\t8900000
112\tplace\tItaly\tItalie|Italien\t\t42.8\t12.8\tIT\t59000000
113\tplace\tUnited States\tÉtats-Unis|USA\t\t39.8\t-98.5\tUS\t331000000
114\tplace\tIraq\tIrak\t\t33.0\t44.0\tIQ\t40000000
201\tperson\tMichael Schumacher\t\t\t\t\t\t
202\tperson\tKofi Annan\t\t\t\t\t\t
301\torganisation\tUnited Nations\tUN|Nations Unies|Vereinte Nationen\t\t\t\t\t
302\torganisation\tFerrari\t\t\t\t\t\t
303\torganisation\tMcLaren\t\t\t\t\t\t
401\tterm\tnuclear\tnucléaire|nuklear|atomar\t\t\t\t\t
402\tterm\tmissile\tmissiles|rakete|raketen\t\t\t\t\t
403\tterm\tweapons of mass destruction\tarmes de destruction massive|massenvernichtungswaffen\t\t\t\t\t
404\tterm\turanium\turan\t\t\t\t\t
405\tterm\tplutonium\t\t\t\t\t\t
406\tterm\tdisarmament\tdésarmement\t\t\t\t\t
407\tterm\tproliferation\tprolifération\t\t\t\t\t
408\tterm\tenrichment\tenrichissement\t\t\t\t\t
"""

TITLES = {
    "en": """\
president\tpre
prime minister\tpre
leader\tpre
driver\tpre
cardinal\tpre
pope\tpre
champion\tpre
president\tpost
former\tmodifier
interim\tmodifier
iraqi\tmodifier
yugoslav\tmodifier
north\tmodifier
korean\tmodifier
""",
    "fr": """\
président\tpre
premier ministre\tpre
dirigeant\tpre
pilote\tpre
cardinal\tpre
pape\tpre
champion\tpre
ancien\tmodifier
irakien\tmodifier
nord-coréen\tmodifier
""",
    "de": """\
präsident\tpre
ministerpräsident\tpre
machthaber\tpre
fahrer\tpre
kardinal\tpre
papst\tpre
weltmeister\tpre
ehemalige\tmodifier
ehemaliger\tmodifier
irakische\tmodifier
nordkoreanische\tmodifier
""",
}

SUFFIXES_DE = """\
pl\t0\ts
"""

OVERRIDES = """\
merge\tJoseph Ratzinger\tBenedict XVI\tpapal succession
merge\tBenoît XVI\tBenedict XVI\tfrench spelling of the papal name
merge\tBenedikt XVI\tBenedict XVI\tgerman spelling of the papal name
split\tGeorge Bush jr\tGeorge Bush sr\tfather and son share the name
"""

# Function-word stock per language for reference corpora and filler text.
FILLER = {
    "en": ("the of and to a in said on for with was at by from has have were "
           "officials government country city people year talks police market "
           "report week group party plan public world state national news day "
           "million members meeting decision member support statement").split(),
    "fr": ("le la de et les des un une dans pour sur avec par est sont été "
           "gouvernement pays ville personnes année pourparlers police marché "
           "rapport semaine groupe parti plan public monde état national "
           "millions membres réunion décision membre soutien déclaration").split(),
    "de": ("der die das und zu ein eine in für mit von auf ist sind war wurden "
           "regierung land stadt menschen jahr gespräche polizei markt bericht "
           "woche gruppe partei plan öffentlichkeit welt staat national "
           "millionen mitglieder treffen entscheidung mitglied erklärung").split(),
}

# Topic vocabulary pools: rare in the reference corpus, dense in topic docs.
TOPIC_WORDS = {
    "nuclear": {
        "en": "nuclear reactor uranium enrichment sanctions disarmament missile inspectors proliferation warhead".split(),
        "fr": "nucléaire réacteur uranium enrichissement sanctions désarmement missiles inspecteurs prolifération ogive".split(),
        "de": "nuklear reaktor uran anreicherung sanktionen abrüstung rakete inspektoren verbreitung sprengkopf".split(),
    },
    "f1": {
        "en": "grand prix qualifying podium lap championship circuit pit overtake pole".split(),
        "fr": "grand prix qualifications podium tour championnat circuit stand dépassement pole".split(),
        "de": "grand prix qualifikation podium runde weltmeisterschaft strecke boxenstopp überholen pole".split(),
    },
    "pope": {
        "en": "conclave cardinals basilica faithful mass encyclical pilgrims blessing inauguration".split(),
        "fr": "conclave cardinaux basilique fidèles messe encyclique pèlerins bénédiction intronisation".split(),
        "de": "konklave kardinäle basilika gläubige messe enzyklika pilger segen amtseinführung".split(),
    },
    "iraq": {
        "en": "insurgency ballot coalition militia checkpoint reconstruction parliament".split(),
        "fr": "insurrection scrutin coalition milice barrage reconstruction parlement".split(),
        "de": "aufstand wahlgang koalition miliz kontrollpunkt wiederaufbau parlament".split(),
    },
}

# Per-topic document templates.  {w0}..{w9} fill from the topic pool in
# deterministic rotation; other placeholders are fixed strings per language.
NEWS_TEMPLATES = {
    "nuclear": {
        "en": [
            ("North Korea {w0} talks resume",
             "Envoys met in Pyongyang as the {w0} {w1} dispute deepened. "
             "North Korean leader Kim Jong Il demanded an end to sanctions. "
             "Inspectors reported {w2} at the nuclear {w3} site near Pyongyang. "
             "The United Nations urged disarmament and warned against missile tests."),
            ("Nuclear {w2} warning from Pyongyang",
             "The {w0} crisis worsened after North Korea barred inspectors. "
             "Washington said the nuclear {w3} programme and uranium {w2} violate agreements. "
             "Leader Kim Jong Il dismissed the United Nations appeal for {w5}. "
             "Analysts fear weapons of mass destruction and new missile launches."),
            ("Six-party {w5} talks stall over {w1}",
             "Negotiators in Seoul saw no progress on the nuclear {w0} front. "
             "North Korea insists its {w3} and plutonium work is peaceful. "
             "The United States pressed for {w5} and tighter {w4}. "
             "Diplomats cited the risk of {w8} proliferation across the region."),
        ],
        "fr": [
            ("Reprise des pourparlers sur le {w0} nord-coréen",
             "Les émissaires réunis à Pyongyang ont évoqué le différend {w0}. "
             "Le dirigeant Kim Jong Il exige la fin des {w4}. "
             "Les inspecteurs signalent un {w2} d'uranium près de Pyongyang. "
             "Les Nations Unies appellent au {w5} et mettent en garde contre les missiles."),
            ("Avertissement {w0} de Pyongyang",
             "La crise {w0} s'aggrave après le refus des inspecteurs par la Corée du Nord. "
             "Washington dénonce le programme {w3} et l'{w2} d'uranium. "
             "Kim Jong Il rejette l'appel des Nations Unies au {w5}. "
             "Les experts craignent des armes de destruction massive et de nouveaux missiles."),
            ("Impasse des pourparlers sur la {w9}",
             "Aucun progrès à Séoul sur le dossier {w0}. "
             "La Corée du Nord défend son {w3} et son plutonium civils. "
             "Les États-Unis réclament le {w5} et des {w4} renforcées. "
             "Les diplomates redoutent la {w8} dans la région."),
        ],
        "de": [
            ("Nordkorea nimmt {w0} Gespräche wieder auf",
             "Gesandte trafen sich in Pjöngjang zum {w0} Streit. "
             "Machthaber Kim Jong Il verlangt ein Ende der {w4}. "
             "Inspektoren melden {w3} und Uran {w1} nahe Pjöngjang. "
             "Die Vereinten Nationen fordern Abrüstung und warnen vor Raketen."),
            ("Atomar Warnung aus Pjöngjang",
             "Die {w0} Krise verschärft sich nachdem Nordkorea Inspektoren abwies. "
             "Washington nennt das {w3} Programm und die Uran {w1} Vertragsbruch. "
             "Kim Jong Il weist den Appell der Vereinten Nationen zur {w5} zurück. "
             "Experten fürchten Massenvernichtungswaffen und neue Raketen Tests."),
            ("Sechsparteien Gespräche über {w9} stocken",
             "In Seoul gab es keinen Fortschritt im {w0} Konflikt. "
             "Nordkorea verteidigt {w3} und Plutonium als friedlich. "
             "Die USA verlangen {w5} und schärfere {w4}. "
             "Diplomaten warnen vor {w8} in der Region."),
        ],
    },
    "f1": {
        "en": [
            ("Schumacher edges {w3} thriller at Sakhir",
             "Driver Michael Schumacher won the Bahrain {w0} {w1} for Ferrari at Sakhir. "
             "Driver Kimi Raikkonen of McLaren finished second after a late {w7}. "
             "Driver Rubens Barrichello completed the podium in Bahrain. "
             "The championship gap narrowed to four points after the {w4}."),
            ("Raikkonen takes {w2} at Sakhir",
             "Driver Kimi Raikkonen claimed {w8} position in qualifying at Sakhir. "
             "Michael Schumacher of Ferrari starts second for the {w0} {w1} in Bahrain. "
             "Driver Fernando Alonso struggled in the final {w2} session. "
             "Rain may reshuffle the {w5} order on the circuit."),
            ("Ferrari confident before Bahrain {w1}",
             "Michael Schumacher praised the updated Ferrari after practice at Sakhir. "
             "The team expects a close {w5} with McLaren and driver Kimi Raikkonen. "
             "Driver Rubens Barrichello set the fastest lap of the day in Bahrain. "
             "Pit strategy around the {w6} stop could decide the race."),
        ],
        "fr": [
            ("Schumacher gagne un {w1} haletant à Sakhir",
             "Le pilote Michael Schumacher a remporté le {w0} {w1} de Bahreïn pour Ferrari à Sakhir. "
             "Le pilote Kimi Raikkonen de McLaren termine deuxième après un {w7} tardif. "
             "Le pilote Rubens Barrichello complète le podium à Bahreïn. "
             "L'écart au championnat se réduit à quatre points après le {w4}."),
            ("Raikkonen en {w8} à Sakhir",
             "Le pilote Kimi Raikkonen décroche la {w8} lors des {w2} à Sakhir. "
             "Michael Schumacher de Ferrari partira deuxième du {w0} {w1} à Bahreïn. "
             "Le pilote Fernando Alonso a souffert dans la dernière séance de {w2}. "
             "La pluie pourrait bouleverser le {w5} sur le circuit."),
            ("Ferrari confiante avant le {w1} de Bahreïn",
             "Michael Schumacher salue la Ferrari améliorée après les essais à Sakhir. "
             "L'équipe attend un {w5} serré avec McLaren et le pilote Kimi Raikkonen. "
             "Le pilote Rubens Barrichello signe le meilleur tour du jour à Bahreïn. "
             "La stratégie autour du {w6} pourrait décider la course."),
        ],
        "de": [
            ("Schumacher gewinnt {w1} Krimi in Sakhir",
             "Fahrer Michael Schumacher gewann den {w0} {w1} von Bahrain für Ferrari in Sakhir. "
             "Fahrer Kimi Raikkonen von McLaren wurde nach spätem {w7} Zweiter. "
             "Fahrer Rubens Barrichello komplettierte das Podium in Bahrain. "
             "Der Rückstand in der {w4} schrumpfte auf vier Punkte."),
            ("Raikkonen holt {w8} in Sakhir",
             "Fahrer Kimi Raikkonen sicherte sich die {w8} in der {w1} von Sakhir. "
             "Michael Schumacher von Ferrari startet beim {w0} {w1} in Bahrain von Platz zwei. "
             "Fahrer Fernando Alonso kämpfte in der letzten {w1} Einheit. "
             "Regen könnte die {w5} auf der Strecke durcheinanderwirbeln."),
            ("Ferrari zuversichtlich vor dem {w1} von Bahrain",
             "Michael Schumacher lobte den verbesserten Ferrari nach dem Training in Sakhir. "
             "Das Team erwartet ein enges {w5} mit McLaren und Fahrer Kimi Raikkonen. "
             "Fahrer Rubens Barrichello fuhr die schnellste Runde des Tages in Bahrain. "
             "Die Strategie am {w6} dürfte das Rennen entscheiden."),
        ],
    },
    "pope": {
        "en": [
            ("Pope Benedict XVI greets {w7} in Rome",
             "Pope Benedict XVI addressed thousands of {w7} at the Vatican. "
             "The former cardinal Joseph Ratzinger spoke of unity during the {w4}. "
             "Pilgrims filled the {w2} in Rome for the {w8}. "
             "Cardinals praised the new pontiff's first {w5}."),
            ("Cardinals reflect on {w0} outcome",
             "The {w0} that elected Pope Benedict XVI concluded in Rome. "
             "Cardinal Joseph Ratzinger had led the {w4} before his election at the Vatican. "
             "The faithful awaited the first {w5} of the new papacy. "
             "Bells rang across Italy as {w7} celebrated."),
            ("Vatican prepares {w8} mass",
             "The Vatican announced details of the {w8} of Pope Benedict XVI. "
             "Dignitaries will join the {w4} in the {w2} in Rome. "
             "The former Joseph Ratzinger chose continuity for his {w5}. "
             "Security tightened around Italy for the {w6}."),
        ],
        "fr": [
            ("Le pape Benoît XVI salue les {w6} à Rome",
             "Le pape Benoît XVI s'est adressé aux {w3} réunis au Vatican. "
             "L'ancien cardinal Joseph Ratzinger a parlé d'unité pendant la {w4}. "
             "Les pèlerins remplissent la {w2} à Rome pour l'{w8}. "
             "Les cardinaux saluent la première {w5} du nouveau pontife."),
            ("Les cardinaux reviennent sur le {w0}",
             "Le {w0} qui a élu le pape Benoît XVI s'est achevé à Rome. "
             "Le cardinal Joseph Ratzinger dirigeait la {w4} avant son élection au Vatican. "
             "Les fidèles attendent la première {w5} du pontificat. "
             "Les cloches sonnent dans toute l'Italie tandis que les {w6} célèbrent."),
            ("Le Vatican prépare la messe d'{w8}",
             "Le Vatican précise le déroulement de l'{w8} du pape Benoît XVI. "
             "Les dignitaires se joindront à la {w4} dans la {w2} à Rome. "
             "L'ancien Joseph Ratzinger choisit la continuité pour son {w5}. "
             "La sécurité est renforcée en Italie pour la cérémonie."),
        ],
        "de": [
            ("Papst Benedikt XVI grüßt {w6} in Rom",
             "Papst Benedikt XVI sprach zu tausenden {w4} im Vatikan. "
             "Der ehemalige Kardinal Joseph Ratzinger rief während der {w4} zur Einheit auf. "
             "Pilger füllten die {w2} in Rom zur {w8}. "
             "Kardinäle lobten die erste {w5} des neuen Pontifex."),
            ("Kardinäle blicken auf das {w0} zurück",
             "Das {w0} das Papst Benedikt XVI wählte endete in Rom. "
             "Kardinal Joseph Ratzinger leitete die {w4} vor seiner Wahl im Vatikan. "
             "Die Gläubigen erwarten die erste {w5} des Pontifikats. "
             "Glocken läuteten in ganz Italien während die {w6} feierten."),
            ("Vatikan bereitet {w8} vor",
             "Der Vatikan nannte Einzelheiten der {w8} von Papst Benedikt XVI. "
             "Würdenträger nehmen an der {w4} in der {w2} in Rom teil. "
             "Der ehemalige Joseph Ratzinger setzt bei seiner {w5} auf Kontinuität. "
             "Die Sicherheit in Italien wurde für die Zeremonie verschärft."),
        ],
    },
    "iraq": {
        "en": [
            ("Allawi urges calm after {w0} claims",
             "Prime minister Iyad Allawi warned that the {w0} threatens the {w1} in Baghdad. "
             "President George Bush jr praised the interim government of Iraq. "
             "The former president George Bush sr visited troops near Baghdad. "
             "The {w2} promised faster {w5} across Iraq."),
            ("Baghdad {w4} attacked amid {w0}",
             "Gunmen struck a {w4} outside Baghdad, officials in Iraq said. "
             "Prime minister Iyad Alawi vowed the {w1} would proceed. "
             "The {w2} blamed remnants of the old {w3}. "
             "Reconstruction funds for the {w5} were pledged by Washington."),
            ("Parliament debates {w6} plan",
             "The new {w6} in Baghdad debated the {w5} programme. "
             "Prime minister Iyad Allawi defended the {w2} record in Iraq. "
             "Lawmakers demanded protection from the {w3} at every {w4}. "
             "The United Nations offered support for the {w1}."),
        ],
        "fr": [],
        "de": [],
    },
}

# Noise singletons: unique vocabulary, one per language-day.
NOISE_DOCS = {
    ("en", 0): ("Museum reopens antique wing",
                "The city museum unveiled its restored antique wing with ceramics and tapestries. "
                "Curators expect record visitors during the spring exhibition season."),
    ("en", 1): ("Ferry timetable changes announced",
                "The harbour authority published a revised ferry timetable for the summer. "
                "Commuters welcomed additional evening crossings to the islands."),
    ("en", 2): ("Botanists catalogue rare orchids",
                "A botanical survey catalogued rare orchids blooming in the highland reserve. "
                "Researchers credited the wet winter for the unusual flowering."),
    ("fr", 0): ("Le musée rouvre son aile antique",
                "Le musée municipal dévoile son aile antique restaurée avec céramiques et tapisseries. "
                "Les conservateurs attendent un record de visiteurs au printemps."),
    ("fr", 1): ("Nouveaux horaires pour les traversiers",
                "L'autorité portuaire publie des horaires révisés pour l'été. "
                "Les usagers saluent les traversées supplémentaires du soir vers les îles."),
    ("fr", 2): ("Des botanistes recensent des orchidées rares",
                "Un inventaire botanique recense des orchidées rares dans la réserve d'altitude. "
                "Les chercheurs attribuent cette floraison à l'hiver humide."),
    ("de", 0): ("Museum eröffnet Antikenflügel neu",
                "Das Stadtmuseum enthüllte seinen restaurierten Antikenflügel mit Keramik und Wandteppichen. "
                "Die Kuratoren erwarten einen Besucherrekord in der Frühjahrssaison."),
    ("de", 1): ("Neuer Fahrplan für die Fähren",
                "Die Hafenbehörde veröffentlichte einen überarbeiteten Fährfahrplan für den Sommer. "
                "Pendler begrüßten zusätzliche Abendfahrten zu den Inseln."),
    ("de", 2): ("Botaniker erfassen seltene Orchideen",
                "Eine botanische Erhebung erfasste seltene Orchideen im Hochlandreservat. "
                "Forscher führen die ungewöhnliche Blüte auf den nassen Winter zurück."),
}

SOURCES = {"en": "fixture wire en", "fr": "agence fixture fr", "de": "fixture dienst de"}


def fill(template: str, pool: list[str], shift: int) -> str:
    mapping = {f"w{i}": pool[(i + shift) % len(pool)] for i in range(10)}
    return template.format(**mapping)


def make_news_docs() -> dict[tuple[str, str], list[dict]]:
    """(date, language) -> document records."""
    out: dict[tuple[str, str], list[dict]] = {}
    for day_index, date in enumerate(DATES):
        for language in LANGUAGES:
            docs = []
            seq = 0

            def add(title: str, body: str) -> None:
                nonlocal seq
                docs.append({
                    "language": language,
                    "source": SOURCES[language],
                    "url": f"http://news.example/{language}/{date}/{seq}",
                    "title": title,
                    "body": body,
                    "published_at": f"{date}T{6 + seq:02d}:15:00Z",
                })
                seq += 1

            for topic in ("nuclear", "f1", "pope", "iraq"):
                templates = NEWS_TEMPLATES[topic][language]
                if not templates:
                    continue
                pool = TOPIC_WORDS[topic][language]
                for i, (title_t, body_t) in enumerate(templates):
                    if i >= _n_templates(topic, language, day_index):
                        continue
                    shift = day_index + i
                    add(fill(title_t, pool, shift), fill(body_t, pool, shift))
            if day_index == 0:
                title, body = NOISE_DOCS[(language, day_index)]
                add(title, body)
            out[(date, language)] = docs
    return out


def _n_templates(topic: str, language: str, day_index: int) -> int:
    """Docs per topic per day: richer day-one clusters, follow-ups after."""
    if topic == "iraq":
        return [3, 2, 0][day_index]
    if day_index == 0 and language == "en" and topic in ("nuclear", "f1"):
        return 3
    return 2


def make_reference_corpus(language: str) -> list[dict]:
    """~50 general-news docs: function words plus mild topic-word background."""
    filler = FILLER[language]
    docs = []
    for i in range(50):
        words = []
        for j in range(40):
            words.append(filler[(i * 7 + j * 3) % len(filler)])
        # sprinkle one topic word into every fifth doc so topic vocabulary
        # exists in the reference with low counts
        if i % 5 == 0:
            topic = ("nuclear", "f1", "pope", "iraq")[(i // 5) % 4]
            pool = TOPIC_WORDS[topic][language]
            words.append(pool[i % len(pool)])
        body = " ".join(words[4:])
        title = " ".join(words[:4])
        docs.append({
            "language": language,
            "source": f"reference {language}",
            "url": f"http://ref.example/{language}/{i}",
            "title": title,
            "body": body,
            "published_at": f"2005-03-{(i % 28) + 1:02d}T12:00:00Z",
        })
    return docs


DESCRIPTORS = {
    100: {"en": "nuclear policy", "fr": "politique nucléaire", "de": "nuklearpolitik"},
    200: {"en": "motor sport", "fr": "sport automobile", "de": "motorsport"},
    300: {"en": "religion", "fr": "religion", "de": "religion"},
    400: {"en": "armed conflict", "fr": "conflit armé", "de": "bewaffneter konflikt"},
}

TOPIC_DESCRIPTOR = {"nuclear": 100, "f1": 200, "pope": 300, "iraq": 400}


def make_labeled_corpus() -> list[dict]:
    """Three training docs per (language, descriptor) from the topic pools."""
    docs = []
    seq = 0
    for topic, descriptor in sorted(TOPIC_DESCRIPTOR.items()):
        for language in LANGUAGES:
            pool = TOPIC_WORDS[topic][language]
            filler = FILLER[language]
            for i in range(3):
                words = []
                for j in range(18):
                    words.append(pool[(i * 5 + j) % len(pool)])
                    if j % 3 == 0:
                        words.append(filler[(i + j) % len(filler)])
                docs.append({
                    "language": language,
                    "source": f"training {language}",
                    "url": f"http://label.example/{language}/{descriptor}/{i}",
                    "title": " ".join(words[:4]),
                    "body": " ".join(words[4:]),
                    "published_at": "2005-02-01T00:00:00Z",
                    "descriptors": [descriptor],
                    "doc_id": f"label-{language}-{descriptor}-{i}",
                })
                seq += 1
    return docs


def write_jsonl(path: Path, records: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "gazetteer.tsv").write_text(GAZETTEER, encoding="utf-8")
    (FIXTURES / "overrides.tsv").write_text(OVERRIDES, encoding="utf-8")
    titles_dir = FIXTURES / "titles"
    titles_dir.mkdir(exist_ok=True)
    for language, content in TITLES.items():
        (titles_dir / f"{language}.tsv").write_text(content, encoding="utf-8")
    suffix_dir = FIXTURES / "suffixes"
    suffix_dir.mkdir(exist_ok=True)
    (suffix_dir / "de.tsv").write_text(SUFFIXES_DE, encoding="utf-8")

    for language in LANGUAGES:
        write_jsonl(FIXTURES / "reference" / f"corpus-{language}.jsonl",
                    make_reference_corpus(language))

    write_jsonl(FIXTURES / "eurovoc" / "labeled.jsonl", make_labeled_corpus())
    catalog_lines = []
    for descriptor, labels in sorted(DESCRIPTORS.items()):
        for language in sorted(labels):
            catalog_lines.append(f"{descriptor}\t{language}\t{labels[language]}")
    (FIXTURES / "eurovoc" / "catalog.tsv").write_text(
        "\n".join(catalog_lines) + "\n", encoding="utf-8")

    for (date, language), docs in sorted(make_news_docs().items()):
        write_jsonl(FIXTURES / "raw" / date / f"{language}.jsonl", docs)

    counts = {
        d: sum(len(v) for (dd, _), v in make_news_docs().items() if dd == d)
        for d in DATES
    }
    print(f"fixtures written under {FIXTURES}")
    print(f"news docs per day: {counts} (total {sum(counts.values())})")


if __name__ == "__main__":
    main()
