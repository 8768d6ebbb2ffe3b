import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import { groupByFile, prefillPrompt, renderFindingsPanel } from '../src/findings.js';
import type { Finding } from '../src/types.js';

const FIXTURES = join(__dirname, 'fixtures');
const MULTI: Finding[] = JSON.parse(readFileSync(join(FIXTURES, 'findings_multi.json'), 'utf8'));
const SINGLE: Finding[] = JSON.parse(readFileSync(join(FIXTURES, 'findings.json'), 'utf8'));

function panel(findings: Finding[], stale = false) {
  const container = document.createElement('div');
  const input = document.createElement('input');
  renderFindingsPanel(container, findings, { promptInput: input, stale });
  return { container, input };
}

describe('findings panel', () => {
  it('groups the recorded findings log by file', () => {
    const groups = groupByFile(MULTI);
    const files = new Set(MULTI.map((f) => f.file));
    expect(groups.size).toBe(files.size);
    expect(groups.size).toBeGreaterThan(1);
    for (const [file, group] of groups) {
      expect(group.every((f) => f.file === file)).toBe(true);
    }
    expect([...groups.values()].flat()).toHaveLength(MULTI.length);
  });

  it('renders one section per file with per-file counts', () => {
    const { container } = panel(MULTI);
    const sections = [...container.querySelectorAll('.findings-file')];
    expect(sections).toHaveLength(groupByFile(MULTI).size);
    for (const section of sections) {
      const count = section.querySelectorAll('li').length;
      expect(section.querySelector('h3')?.textContent).toContain(`(${count})`);
    }
    expect(container.querySelectorAll('.finding-item')).toHaveLength(MULTI.length);
  });

  it('clicking a finding prefills the prompt box without sending', () => {
    const { container, input } = panel(SINGLE);
    const first = container.querySelector('.finding-item') as HTMLButtonElement;
    first.click();
    expect(input.value).toBe(prefillPrompt(SINGLE[0]));
    expect(input.value).toBe(`fix ${SINGLE[0].rule_id} in ${SINGLE[0].file}`);
  });

  it('shows an empty-state message for zero findings', () => {
    const { container } = panel([]);
    expect(container.querySelector('.findings-empty')?.textContent).toMatch(/No accessibility/);
  });

  it('shows a stale badge when the poll failed', () => {
    const { container } = panel(SINGLE, true);
    expect(container.querySelector('.findings-stale')).not.toBeNull();
  });
});
