import json
import os

from termcolor import colored


def getReport(runName, fileName):
    path = 'logs/' + runName + '/' + fileName
    if not os.path.isfile(path):
        return None
    return json.load(open(path))


def checkReport(runName, fileName='report.json'):
    print(runName)
    report = getReport(runName, fileName)
    if report is None:
        print(colored('no report written', 'red'))
        return
    if 'rows' in report:
        failures = [row for row in report['rows'] if not row['pass']]
        color = 'red' if failures else 'green'
        print(colored('{} checks, {} failures'.format(len(report['rows']), len(failures)), color))
        return
    for kernel in report['kernels']:
        for row in kernel.get('coefficients', []):
            if row['compared']:
                color = 'green' if row['pass'] else 'red'
                print(colored('{}: {:.10g} vs {:.10g}'.format(row['coefficient'], row['fitted'], row['expected']),
                              color))
    print(colored('pass' if report['pass'] else 'FAIL', 'green' if report['pass'] else 'red'))


def checkRoundTrip(original, copy):
    print(copy)
    if not os.path.isfile(copy):
        print(colored('no output written', 'red'))
        return
    same = json.load(open(original))['coeffs'] == json.load(open(copy))['coeffs']
    print(colored('identical' if same else 'differs', 'green' if same else 'red'))


checkReport('test.identities', 'identities.json')
checkReport('test.circle')
checkReport('test.circle_trace')
checkReport('test.interval')
checkReport('test.line')
checkReport('test.halfline')
checkRoundTrip('test/data/heat_line.json', 'logs/test.heat_line.json')
